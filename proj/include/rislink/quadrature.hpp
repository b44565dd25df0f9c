#pragma once

#include <functional>

#include "rislink/analytic.hpp"

namespace rislink::quadrature {

/// Integral of g(x) * pdf(x) over the SNR support (0, alpha).
///
/// Substitutes x = alpha * exp(-t^2), which turns the two integrable endpoint
/// singularities of the density into a smooth half-Gaussian in t, then runs
/// adaptive Gauss-Kronrod over t in [0, inf). The density is evaluated through
/// analytic::scaled_pdf, so the result is independent of the closed-form moments.
double expect(const analytic::ClosedFormParams& p, double sigma,
              const std::function<double(double)>& g);

/// expect() with g = 1.
double total_probability(const analytic::ClosedFormParams& p, double sigma);

/// expect() with g = x^order.
double moment(const analytic::ClosedFormParams& p, double sigma, int order);

}  // namespace rislink::quadrature
