#pragma once

// Default link used across the tests: 140 GHz, P_t/N_o = 20 dB, |R| = 1,
// G_r = 40 dB, w_RIS = 25 cm, d_UE = 2 m, theta_UE = 0.

#include "rislink/geometry.hpp"
#include "rislink/units.hpp"

namespace rislink::testing {

inline PhysicalConfig default_physics(double reflection = 1.0) {
    return PhysicalConfig::make(140e9, db_to_linear(20.0), reflection, db_to_linear(40.0));
}

inline LinkGeometry default_geometry(const PhysicalConfig& cfg, double w = 0.25, double d = 2.0,
                                     double theta_deg = 0.0) {
    GeometryInput in;
    in.footprint_radius = w;
    in.ue_distance = d;
    in.ue_elevation = deg_to_rad(theta_deg);
    return LinkGeometry::make(cfg, in);
}

inline double rel_diff(double a, double b) { return std::abs(a - b) / std::abs(b); }

}  // namespace rislink::testing
