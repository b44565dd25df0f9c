#pragma once

// Closed-form statistics of the misaligned SNR. A Gaussian pointing error
// dtheta ~ N(0, sigma^2) turns the SNR into alpha * exp(-slope * dtheta^2);
// everything below follows from that form and depends on the pointing spread
// only through u = slope * sigma^2.

#include <string_view>

#include "rislink/geometry.hpp"

namespace rislink::analytic {

enum class Regime {
    InPlane,      // error on the steering plane (elevation)
    NormalPlane,  // error on the steering-plane normal
};

std::string_view to_string(Regime r);

struct MisalignmentRegime {
    Regime variant = Regime::InPlane;
    double sigma = 0.0;  // rad, > 0
};

/// (alpha, slope) of the approximation. slope is beta for InPlane and zeta for
/// NormalPlane, in rad^-2.
struct ClosedFormParams {
    double alpha = 0.0;
    double slope = 0.0;
};

ClosedFormParams closed_form_params(const PhysicalConfig& cfg, const LinkGeometry& geom,
                                    Regime regime);

/// alpha * exp(-slope * error^2).
double snr_tilde(const ClosedFormParams& p, double error_angle);

/// Density on the open support (0, alpha). Throws ValidationError outside it.
double pdf(const ClosedFormParams& p, double sigma, double x);

/// x * pdf(x) as a function of depth = ln(alpha / x) > 0. Stays finite where
/// x itself underflows.
double scaled_pdf(const ClosedFormParams& p, double sigma, double depth);

/// Distribution function, clamped to 0 below the support and 1 above it.
double cdf(const ClosedFormParams& p, double sigma, double x);

double mean(const ClosedFormParams& p, double sigma);
double variance(const ClosedFormParams& p, double sigma);

/// E[SNR^k] = alpha^k / sqrt(1 + 2 k u).
double raw_moment(const ClosedFormParams& p, double sigma, int order);

/// Skewness as a function of the normalised spread u = slope * sigma^2.
/// u = 0 is a removable 0/0 and is rejected.
double skewness_of_spread(double u);

/// Rejects sigma = 0.
double skewness(const ClosedFormParams& p, double sigma);

/// The spread u* at which skewness_of_spread changes sign.
double zero_skew_spread();

/// sigma* = sqrt(u* / slope), the pointing spread with zero skewness.
double zero_skew_sigma(const ClosedFormParams& p);

enum class AsymptoticLimit {
    FarRayleigh,   // z_R >> d_UE (wide AP footprint)
    NearRayleigh,  // d_UE >> z_R (high-gain AP)
};

/// Leading-order (alpha, slope) in either limit. The caller decides whether
/// the limit applies.
ClosedFormParams asymptotic_params(const PhysicalConfig& cfg, const LinkGeometry& geom,
                                   Regime regime, AsymptoticLimit limit);

}  // namespace rislink::analytic
