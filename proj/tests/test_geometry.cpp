#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "defaults.hpp"
#include "rislink/error.hpp"
#include "rislink/geometry.hpp"
#include "rislink/units.hpp"

namespace rislink {
namespace {

using testing::default_physics;
using testing::rel_diff;

TEST(PhysicalConfig, DerivedQuantities) {
    const auto cfg = default_physics();
    EXPECT_LE(rel_diff(cfg.wavenumber * cfg.wavelength, 2.0 * kPi), 1e-12);
    EXPECT_LE(rel_diff(cfg.receiver_aperture,
                       cfg.receiver_gain * cfg.wavelength * cfg.wavelength / (4.0 * kPi)),
              1e-12);
    EXPECT_DOUBLE_EQ(cfg.wavelength, kSpeedOfLight / 140e9);
}

TEST(PhysicalConfig, RejectsOutOfRange) {
    EXPECT_THROW(PhysicalConfig::make(0.0, 100.0, 1.0, 1e4), ValidationError);
    EXPECT_THROW(PhysicalConfig::make(140e9, 100.0, 1.5, 1e4), ValidationError);
    EXPECT_THROW(PhysicalConfig::make(140e9, 100.0, -0.1, 1e4), ValidationError);
    EXPECT_THROW(PhysicalConfig::make(140e9, 0.0, 1.0, 1e4), ValidationError);
    EXPECT_NO_THROW(PhysicalConfig::make(140e9, 100.0, 0.0, 1e4));
}

TEST(LinkGeometry, RayleighLengthFromFootprintOrAccessPoint) {
    const auto cfg = default_physics();
    // G_AP chosen so that 8 d^2 / G = w^2 for w = 25 cm, d_AP = 3 m.
    const double d_ap = 3.0;
    const double g_ap = 8.0 * d_ap * d_ap / (0.25 * 0.25);

    GeometryInput from_ap;
    from_ap.ap_distance = d_ap;
    from_ap.ap_gain = g_ap;
    from_ap.ue_distance = 2.0;
    const auto g1 = LinkGeometry::make(cfg, from_ap);
    EXPECT_LE(rel_diff(g1.footprint_radius, 0.25), 1e-12);
    EXPECT_LE(rel_diff(g1.rayleigh_length, 4.0 * cfg.wavenumber * d_ap * d_ap / g_ap), 1e-12);
    EXPECT_LE(rel_diff(g1.rayleigh_length, 0.5 * cfg.wavenumber * 0.25 * 0.25), 1e-12);

    GeometryInput both = from_ap;
    both.footprint_radius = 0.25;
    EXPECT_NO_THROW(LinkGeometry::make(cfg, both));

    both.footprint_radius = 0.25 * (1.0 + 1e-6);
    EXPECT_THROW(LinkGeometry::make(cfg, both), ValidationError);
}

TEST(LinkGeometry, RejectsInvalidInputs) {
    const auto cfg = default_physics();
    GeometryInput in;
    in.footprint_radius = 0.25;
    in.ue_distance = 2.0;

    auto bad = in;
    bad.footprint_radius.reset();
    EXPECT_THROW(LinkGeometry::make(cfg, bad), ValidationError);

    bad = in;
    bad.ue_distance = 0.0;
    EXPECT_THROW(LinkGeometry::make(cfg, bad), ValidationError);

    bad = in;
    bad.ue_elevation = deg_to_rad(90.0);
    EXPECT_THROW(LinkGeometry::make(cfg, bad), ValidationError);

    bad = in;
    bad.ue_azimuth = deg_to_rad(10.0);
    EXPECT_THROW(LinkGeometry::make(cfg, bad), ValidationError);

    bad = in;
    bad.ap_distance = 3.0;  // gain missing
    EXPECT_THROW(LinkGeometry::make(cfg, bad), ValidationError);
}

TEST(SphericalToCartesian, Examples) {
    auto p = spherical_to_cartesian(2.0, 0.0, 0.0);
    EXPECT_DOUBLE_EQ(p.x, 0.0);
    EXPECT_DOUBLE_EQ(p.y, 0.0);
    EXPECT_DOUBLE_EQ(p.z, 2.0);

    p = spherical_to_cartesian(2.0, deg_to_rad(90.0), deg_to_rad(90.0));
    EXPECT_NEAR(p.x, 0.0, 1e-15);
    EXPECT_NEAR(p.y, 2.0, 1e-15);
    EXPECT_NEAR(p.z, 0.0, 1e-15);

    p = spherical_to_cartesian(2.0, deg_to_rad(30.0), 0.0);
    EXPECT_NEAR(p.x, 1.0, 1e-12);
    EXPECT_NEAR(p.y, 0.0, 1e-15);
    EXPECT_NEAR(p.z, 1.7320508075688772, 1e-12);
}

TEST(SphericalToCartesian, RoundTrip) {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> r(0.1, 50.0);
    std::uniform_real_distribution<double> th(1e-6, 0.5 * kPi - 1e-6);
    std::uniform_real_distribution<double> ph(-kPi + 1e-9, kPi);
    for (int i = 0; i < 1000; ++i) {
        const double d = r(rng), t = th(rng), f = ph(rng);
        const auto s = cartesian_to_spherical(spherical_to_cartesian(d, t, f));
        EXPECT_LE(rel_diff(s.radius, d), 1e-10);
        EXPECT_NEAR(s.elevation, t, 1e-10);
        EXPECT_NEAR(s.azimuth, f, 1e-10);
    }
}

TEST(BeamCoords, Examples) {
    const auto o = beam_coords({0.0, 0.0, 0.0}, {deg_to_rad(40.0), deg_to_rad(-20.0)});
    EXPECT_EQ(o.x, 0.0);
    EXPECT_EQ(o.y, 0.0);
    EXPECT_EQ(o.z, 0.0);

    const auto b = beam_coords({0.0, 0.0, 1.0}, {deg_to_rad(45.0), 0.0});
    EXPECT_NEAR(b.z, std::sqrt(2.0), 1e-12);
    EXPECT_NEAR(b.x, -1.0, 1e-12);
    EXPECT_NEAR(b.y, 0.0, 1e-15);

    EXPECT_THROW(beam_coords({0.0, 0.0, 1.0}, {0.5 * kPi, 0.0}), ValidationError);
}

TEST(BeamCoords, UePositionMapsToBeamAxis) {
    const auto cfg = default_physics();
    const auto geom = testing::default_geometry(cfg, 0.25, 2.0, 35.0);
    const auto bc = beam_coords(ue_position(geom), aligned_direction(geom));
    EXPECT_NEAR(bc.x, 0.0, 1e-14);
    EXPECT_NEAR(bc.y, 0.0, 1e-14);
    EXPECT_NEAR(bc.z, 2.0, 1e-14);
}

TEST(BeamCoords, AimedBeamPutsPointOnAxis) {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> r(0.1, 30.0);
    std::uniform_real_distribution<double> th(0.0, deg_to_rad(85.0));
    std::uniform_real_distribution<double> ph(-kPi, kPi);
    for (int i = 0; i < 1000; ++i) {
        const double d = r(rng), t = th(rng), f = ph(rng);
        const auto p = spherical_to_cartesian(d, t, f);
        const auto bc = beam_coords(p, {t, f});
        EXPECT_NEAR(bc.x, 0.0, 1e-12 * d);
        EXPECT_NEAR(bc.y, 0.0, 1e-12 * d);
        EXPECT_LE(rel_diff(bc.z, p.radius()), 1e-12);
    }
}

TEST(ErrorAngles, Examples) {
    auto b = error_angles_to_beam_direction(deg_to_rad(30.0), 0.0, 0.0);
    EXPECT_DOUBLE_EQ(b.elevation, deg_to_rad(30.0));
    EXPECT_DOUBLE_EQ(b.azimuth, 0.0);

    b = error_angles_to_beam_direction(deg_to_rad(45.0), deg_to_rad(2.0), 0.0);
    EXPECT_NEAR(rad_to_deg(b.elevation), 47.0, 1e-12);
    EXPECT_EQ(b.azimuth, 0.0);

    b = error_angles_to_beam_direction(0.0, 0.0, deg_to_rad(5.0));
    EXPECT_NEAR(rad_to_deg(b.elevation), 5.0, 1e-12);
    EXPECT_NEAR(rad_to_deg(b.azimuth), 90.0, 1e-12);
}

TEST(ErrorAngles, InPlaneErrorAddsExactly) {
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> th(0.0, deg_to_rad(80.0));
    std::uniform_real_distribution<double> dx(deg_to_rad(-10.0), deg_to_rad(10.0));
    for (int i = 0; i < 10000; ++i) {
        const double t = th(rng), e = dx(rng);
        if (!(t + e > 0.0 && t + e < 0.5 * kPi)) continue;
        const auto b = error_angles_to_beam_direction(t, e, 0.0);
        EXPECT_EQ(b.elevation, t + e);
        EXPECT_EQ(b.azimuth, 0.0);
    }
    // A tilt past the normal flips to the opposite azimuth.
    const auto flipped = error_angles_to_beam_direction(deg_to_rad(1.0), deg_to_rad(-3.0), 0.0);
    EXPECT_NEAR(rad_to_deg(flipped.elevation), 2.0, 1e-12);
    EXPECT_DOUBLE_EQ(flipped.azimuth, kPi);
}

TEST(ErrorAngles, ConstraintResidualsOnGrid) {
    const int n = 100;
    double worst = 0.0;
    for (int i = 0; i < n; ++i) {
        const double t = deg_to_rad(60.0 * i / (n - 1));
        for (int j = 0; j < n; ++j) {
            const double dx = deg_to_rad(-10.0 + 20.0 * j / (n - 1));
            for (int k = 0; k < n; ++k) {
                const double dy = deg_to_rad(-10.0 + 20.0 * k / (n - 1));
                const auto b = error_angles_to_beam_direction(t, dx, dy);
                const double st = std::sin(b.elevation);
                const double r1 = st * std::cos(b.azimuth) - std::sin(t + dx) * std::cos(dy);
                const double r2 = st * std::sin(b.azimuth) - std::sin(dy);
                const double r3 = std::cos(b.elevation) - std::cos(t + dx) * std::cos(dy);
                worst = std::max({worst, std::abs(r1), std::abs(r2), std::abs(r3)});
            }
        }
    }
    EXPECT_LE(worst, 1e-12);
}

TEST(ErrorAngles, RejectsBackHalfSpace) {
    EXPECT_THROW(error_angles_to_beam_direction(deg_to_rad(85.0), deg_to_rad(10.0), 0.0),
                 ValidationError);
    EXPECT_THROW(error_angles_to_beam_direction(0.0, 0.0, deg_to_rad(95.0)), ValidationError);
    EXPECT_FALSE(in_forward_half_space(deg_to_rad(85.0), deg_to_rad(6.0), 0.0));
    EXPECT_TRUE(in_forward_half_space(deg_to_rad(85.0), deg_to_rad(4.0), 0.0));
}

}  // namespace
}  // namespace rislink
