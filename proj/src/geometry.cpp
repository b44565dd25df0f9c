#include "rislink/geometry.hpp"

#include <cmath>

#include "rislink/error.hpp"
#include "rislink/units.hpp"

namespace rislink {

PhysicalConfig PhysicalConfig::make(double frequency_hz, double power_noise_ratio,
                                    double reflection_magnitude, double receiver_gain) {
    require(std::isfinite(frequency_hz) && frequency_hz > 0.0, "frequency must be > 0");
    require(std::isfinite(power_noise_ratio) && power_noise_ratio > 0.0,
            "power-to-noise ratio must be > 0");
    require(reflection_magnitude >= 0.0 && reflection_magnitude <= 1.0,
            "reflection magnitude must lie in [0, 1]");
    require(std::isfinite(receiver_gain) && receiver_gain > 0.0, "receiver gain must be > 0");

    PhysicalConfig cfg;
    cfg.frequency = frequency_hz;
    cfg.wavelength = kSpeedOfLight / frequency_hz;
    cfg.wavenumber = 2.0 * kPi / cfg.wavelength;
    cfg.power_noise_ratio = power_noise_ratio;
    cfg.reflection_magnitude = reflection_magnitude;
    cfg.receiver_gain = receiver_gain;
    cfg.receiver_aperture = receiver_gain * cfg.wavelength * cfg.wavelength / (4.0 * kPi);
    return cfg;
}

double rayleigh_length(double wavenumber, double footprint_radius) {
    return 0.5 * wavenumber * footprint_radius * footprint_radius;
}

double footprint_from_access_point(double ap_distance, double ap_gain) {
    return std::sqrt(8.0 * ap_distance * ap_distance / ap_gain);
}

LinkGeometry LinkGeometry::make(const PhysicalConfig& cfg, const GeometryInput& in) {
    const bool has_ap = in.ap_distance.has_value() || in.ap_gain.has_value();
    require(in.footprint_radius.has_value() || has_ap,
            "either footprint radius or (AP distance, AP gain) is required");
    if (has_ap) {
        require(in.ap_distance.has_value() && in.ap_gain.has_value(),
                "AP distance and AP gain must be given together");
        require(*in.ap_distance > 0.0, "AP distance must be > 0");
        require(*in.ap_gain > 0.0, "AP gain must be > 0");
    }

    double w = 0.0;
    if (in.footprint_radius) {
        w = *in.footprint_radius;
        require(std::isfinite(w) && w > 0.0, "footprint radius must be > 0");
        if (has_ap) {
            // Compare Rayleigh lengths: k w^2 / 2 against 4 k d_AP^2 / G_AP.
            const double z_direct = rislink::rayleigh_length(cfg.wavenumber, w);
            const double z_ap =
                4.0 * cfg.wavenumber * *in.ap_distance * *in.ap_distance / *in.ap_gain;
            require(std::abs(z_direct - z_ap) <= kFootprintConsistencyTol * z_direct,
                    "footprint radius inconsistent with AP distance and gain");
        }
    } else {
        w = footprint_from_access_point(*in.ap_distance, *in.ap_gain);
    }

    require(std::isfinite(in.ue_distance) && in.ue_distance > 0.0, "UE distance must be > 0");
    require(in.ue_elevation >= 0.0 && in.ue_elevation < 0.5 * kPi,
            "UE elevation must lie in [0, 90) degrees");
    require(in.ue_azimuth == 0.0, "UE azimuth must be 0 (UE on the steering plane)");

    LinkGeometry g;
    g.footprint_radius = w;
    g.rayleigh_length = rislink::rayleigh_length(cfg.wavenumber, w);
    g.ue_distance = in.ue_distance;
    g.ue_elevation = in.ue_elevation;
    g.ue_azimuth = 0.0;
    g.ap_distance = in.ap_distance;
    g.ap_gain = in.ap_gain;
    g.ap_elevation = in.ap_elevation;
    g.ap_azimuth = in.ap_azimuth;
    return g;
}

double ObservationPoint::radius() const { return std::sqrt(x * x + y * y + z * z); }

ObservationPoint spherical_to_cartesian(double distance, double elevation, double azimuth) {
    const double s = std::sin(elevation);
    return {distance * s * std::cos(azimuth), distance * s * std::sin(azimuth),
            distance * std::cos(elevation)};
}

SphericalCoords cartesian_to_spherical(const ObservationPoint& p) {
    const double rho = std::hypot(p.x, p.y);
    return {p.radius(), std::atan2(rho, p.z), std::atan2(p.y, p.x)};
}

ObservationPoint ue_position(const LinkGeometry& geom) {
    return spherical_to_cartesian(geom.ue_distance, geom.ue_elevation, geom.ue_azimuth);
}

BeamDirection aligned_direction(const LinkGeometry& geom) {
    return {geom.ue_elevation, geom.ue_azimuth};
}

BeamCoords beam_coords(const ObservationPoint& p, const BeamDirection& b) {
    const double c = std::cos(b.elevation);
    require(c != 0.0 && std::abs(b.elevation) < 0.5 * kPi,
            "beam elevation must be below 90 degrees (grazing beam)");
    const double zb = p.z / c;
    const double s = std::sin(b.elevation);
    return {p.x - zb * s * std::cos(b.azimuth), p.y - zb * s * std::sin(b.azimuth), zb};
}

bool in_forward_half_space(double theta_ue, double dtheta_x, double dtheta_y) {
    return std::cos(theta_ue + dtheta_x) * std::cos(dtheta_y) > 0.0;
}

BeamDirection error_angles_to_beam_direction(double theta_ue, double dtheta_x,
                                             double dtheta_y) {
    require(in_forward_half_space(theta_ue, dtheta_x, dtheta_y),
            "misaligned beam leaves the forward half-space");
    const double tilt = theta_ue + dtheta_x;
    if (dtheta_y == 0.0) {
        // Pure steering-plane error: the elevation is the tilt itself.
        return tilt >= 0.0 ? BeamDirection{tilt, 0.0} : BeamDirection{-tilt, kPi};
    }
    const double sx = std::sin(tilt) * std::cos(dtheta_y);
    const double sy = std::sin(dtheta_y);
    const double cz = std::cos(tilt) * std::cos(dtheta_y);
    // atan2 keeps full precision near the normal, where arccos(cz) does not.
    return {std::atan2(std::hypot(sx, sy), cz), std::atan2(sy, sx)};
}

}  // namespace rislink
