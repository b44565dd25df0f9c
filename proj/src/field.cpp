#include "rislink/field.hpp"

#include <cmath>

#include "rislink/units.hpp"

namespace rislink::field {

double peak_density(const PhysicalConfig& cfg, const LinkGeometry& geom) {
    const double w = geom.footprint_radius;
    const double r = cfg.reflection_magnitude;
    return 2.0 * cfg.power_noise_ratio * r * r / (kPi * w * w);
}

double power_density(const PhysicalConfig& cfg, const LinkGeometry& geom,
                     const BeamDirection& b, const ObservationPoint& p) {
    const BeamCoords bc = beam_coords(p, b);
    const double zr = geom.rayleigh_length;
    const double c2 = std::cos(b.elevation) * std::cos(b.elevation);
    const double c4 = c2 * c2;
    const double zb2 = bc.z * bc.z;
    const double zr2 = zr * zr;

    const double spread = 1.0 + zb2 / zr2;
    const double spread_tilted = 1.0 + zb2 / (zr2 * c4);

    const double transverse = (bc.x * bc.x + bc.y * bc.y) / spread;
    const double along = bc.x * std::cos(b.azimuth) + bc.y * std::sin(b.azimuth);
    // (1 - c^4) along^2 / (spread (1 + zr^2 c^4 / zb^2)), multiplied through by
    // zb^2 so that zb = 0 is regular.
    const double ellipticity = (1.0 - c4) * along * along * zb2 / (spread * (zb2 + zr2 * c4));

    const double exponent = -(cfg.wavenumber / zr) * (transverse - ellipticity);
    return peak_density(cfg, geom) / std::sqrt(spread * spread_tilted) * std::exp(exponent);
}

double snr_at_point(const PhysicalConfig& cfg, const LinkGeometry& geom,
                    const BeamDirection& b, const ObservationPoint& p) {
    return power_density(cfg, geom, b, p) * cfg.receiver_aperture;
}

double snr_at_ue(const PhysicalConfig& cfg, const LinkGeometry& geom) {
    const double d2 = geom.ue_distance * geom.ue_distance;
    const double zr2 = geom.rayleigh_length * geom.rayleigh_length;
    const double c2 = std::cos(geom.ue_elevation) * std::cos(geom.ue_elevation);
    const double spread = (1.0 + d2 / zr2) * (1.0 + d2 / (zr2 * c2 * c2));
    return peak_density(cfg, geom) * cfg.receiver_aperture / std::sqrt(spread);
}

}  // namespace rislink::field
