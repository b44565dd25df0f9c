#include "rislink/quadrature.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <limits>

namespace rislink::quadrature {

double expect(const analytic::ClosedFormParams& p, double sigma,
              const std::function<double(double)>& g) {
    auto integrand = [&](double t) {
        if (!(t > 0.0) || !std::isfinite(t)) return 0.0;
        // pdf(x) |dx/dt| = 2 t x pdf(x), with ln(alpha / x) = t^2 exactly.
        const double x = p.alpha * std::exp(-t * t);
        return g(x) * analytic::scaled_pdf(p, sigma, t * t) * 2.0 * t;
    };
    constexpr unsigned max_depth = 20;
    constexpr double tol = 1e-13;
    return boost::math::quadrature::gauss_kronrod<double, 31>::integrate(
        integrand, 0.0, std::numeric_limits<double>::infinity(), max_depth, tol);
}

double total_probability(const analytic::ClosedFormParams& p, double sigma) {
    return expect(p, sigma, [](double) { return 1.0; });
}

double moment(const analytic::ClosedFormParams& p, double sigma, int order) {
    return expect(p, sigma, [order](double x) { return std::pow(x, order); });
}

}  // namespace rislink::quadrature
