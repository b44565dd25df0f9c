#pragma once

// Exact reflected-beam model: power density of the tilted Gaussian beam that
// leaves the RIS, and the SNR it produces at an observation point. This is the
// ground truth that the closed forms approximate and the sampler evaluates.

#include "rislink/geometry.hpp"

namespace rislink::field {

/// Peak power density on the RIS, 2 (P_t/N_o) |R|^2 / (pi w^2). Densities are
/// carried in units normalised by N_o.
double peak_density(const PhysicalConfig& cfg, const LinkGeometry& geom);

/// Reflected power density (normalised by N_o) at p for a beam along b.
/// Total on the forward half-space, including the RIS plane z = 0.
double power_density(const PhysicalConfig& cfg, const LinkGeometry& geom,
                     const BeamDirection& b, const ObservationPoint& p);

/// SNR = S_r A_r / N_o at p.
double snr_at_point(const PhysicalConfig& cfg, const LinkGeometry& geom,
                    const BeamDirection& b, const ObservationPoint& p);

/// SNR at the UE for a perfectly aligned beam; the maximum over all beam
/// directions.
double snr_at_ue(const PhysicalConfig& cfg, const LinkGeometry& geom);

}  // namespace rislink::field
