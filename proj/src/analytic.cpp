#include "rislink/analytic.hpp"

#include <boost/math/tools/roots.hpp>
#include <cmath>
#include <limits>

#include "rislink/error.hpp"
#include "rislink/field.hpp"
#include "rislink/units.hpp"

namespace rislink::analytic {

namespace {

/// Below this spread the skewness moments are summed as a Taylor series.
constexpr double kSkewSeriesBelow = 0.02;

void require_sigma(double sigma) {
    require(std::isfinite(sigma) && sigma > 0.0, "pointing spread sigma must be > 0");
}

// (1 + a)^power - 1 without losing the small-a digits.
double pow1p_minus_one(double a, double power) { return std::expm1(power * std::log1p(a)); }

// Smallest/largest spread searched for the skewness root.
constexpr double kSpreadLow = 1e-6;
constexpr double kSpreadHigh = 10.0;

}  // namespace

std::string_view to_string(Regime r) {
    return r == Regime::InPlane ? "inplane" : "normal";
}

ClosedFormParams closed_form_params(const PhysicalConfig& cfg, const LinkGeometry& geom,
                                    Regime regime) {
    const double zr = geom.rayleigh_length;
    const double zr2 = zr * zr;
    const double d2 = geom.ue_distance * geom.ue_distance;
    const double c2 = std::cos(geom.ue_elevation) * std::cos(geom.ue_elevation);
    const double c4 = c2 * c2;
    const double k = cfg.wavenumber;

    ClosedFormParams p;
    p.alpha = field::peak_density(cfg, geom) * cfg.receiver_aperture * zr2 /
              std::sqrt((d2 + zr2) * (zr2 + d2 / c4));
    if (regime == Regime::InPlane) {
        p.slope = (d2 * k * zr / c2) / (zr2 + d2 / c4);
    } else {
        p.slope = k * zr * d2 / (zr2 + d2);
    }
    return p;
}

double snr_tilde(const ClosedFormParams& p, double error_angle) {
    return p.alpha * std::exp(-p.slope * error_angle * error_angle);
}

double scaled_pdf(const ClosedFormParams& p, double sigma, double depth) {
    require_sigma(sigma);
    require(depth > 0.0, "depth ln(alpha/x) must be > 0");
    const double u = p.slope * sigma * sigma;
    return std::exp(-depth / (2.0 * u)) /
           (std::sqrt(2.0 * kPi) * sigma * std::sqrt(p.slope * depth));
}

double pdf(const ClosedFormParams& p, double sigma, double x) {
    require_sigma(sigma);
    require(x > 0.0 && x < p.alpha, "pdf argument must lie in the open interval (0, alpha)");
    const double ratio = p.alpha / x;
    const double depth = std::isfinite(ratio) ? std::log(ratio) : std::log(p.alpha) - std::log(x);
    return scaled_pdf(p, sigma, depth) / x;
}

double cdf(const ClosedFormParams& p, double sigma, double x) {
    require_sigma(sigma);
    if (x <= 0.0) return 0.0;
    if (x >= p.alpha) return 1.0;
    const double ratio = p.alpha / x;
    // The ratio overflows for subnormal x; the log difference does not.
    const double depth = std::isfinite(ratio) ? std::log(ratio) : std::log(p.alpha) - std::log(x);
    const double arg = std::sqrt(depth) / (std::sqrt(2.0 * p.slope) * sigma);
    // 1 - erf(arg), kept as erfc so the lower tail does not cancel.
    return std::erfc(arg);
}

double mean(const ClosedFormParams& p, double sigma) {
    return p.alpha / std::sqrt(1.0 + 2.0 * p.slope * sigma * sigma);
}

double variance(const ClosedFormParams& p, double sigma) {
    const double u = p.slope * sigma * sigma;
    // 1/sqrt(1+4u) - 1/(1+2u), both terms shifted by -1 to keep small-u digits.
    const double v = pow1p_minus_one(4.0 * u, -0.5) - pow1p_minus_one(2.0 * u, -1.0);
    return p.alpha * p.alpha * v;
}

double raw_moment(const ClosedFormParams& p, double sigma, int order) {
    return std::pow(p.alpha, order) / std::sqrt(1.0 + 2.0 * order * p.slope * sigma * sigma);
}

double skewness_of_spread(double u) {
    require(std::isfinite(u) && u > 0.0, "skewness needs a spread u > 0");
    // Normalised moments m_k = E[SNR^k]/alpha^k = (1 + 2 k u)^(-1/2). The
    // numerator is m3 - 3 m1 m2 + 2 m1^3 = O(u^3) and the denominator
    // (m2 - m1^2)^(3/2) with m2 - m1^2 = O(u^2).
    if (u < kSkewSeriesBelow) {
        // Taylor series of numerator / u^3 and (m2 - m1^2) / u^2; radius 1/6.
        constexpr double c3[] = {-8.0, 108.0, -936.0, 6738.0, -44145.0, 274636.5, -1658984.0,
                                 9853019.25, -57957849.9375, 339128691.03125, -1979105911.3125,
                                 11537636719.359375, -67254675885.07031, 392219562897.45703,
                                 -2289149345285.297, 13372974560163.416, -78202587532147.03,
                                 457782252546162.56, -2682455135488369.5,
                                 1.5733468655310528e+16};
        constexpr double c2[] = {2.0, -12.0, 54.0, -220.0, 860.0, -3304.0, 12614.0, -48108.0,
                                 183732.0, -703384.0, 2700060.0, -10392408.0, 40100216.0,
                                 -155084752.0, 601014854.0, -2333475148.0, 9074873156.0,
                                 -35344739512.0, 137845480244.0, -538255777288.0};
        double third = 0.0;
        double second = 0.0;
        for (int i = 19; i >= 0; --i) {
            third = third * u + c3[i];
            second = second * u + c2[i];
        }
        return third / std::pow(second, 1.5);
    }
    // Each product is written as (1+..)^.. - 1 so the O(1) parts cancel exactly.
    const double l2 = std::log1p(2.0 * u);
    const double l4 = std::log1p(4.0 * u);
    const double l6 = std::log1p(6.0 * u);
    const double e3 = std::expm1(-0.5 * l6);
    const double e12 = std::expm1(-0.5 * l2 - 0.5 * l4);
    const double e111 = std::expm1(-1.5 * l2);
    const double e2 = std::expm1(-0.5 * l4);
    const double e11 = std::expm1(-l2);
    const double third = e3 - 3.0 * e12 + 2.0 * e111;
    const double second = e2 - e11;
    return third / std::pow(second, 1.5);
}

double skewness(const ClosedFormParams& p, double sigma) {
    require_sigma(sigma);
    return skewness_of_spread(p.slope * sigma * sigma);
}

double zero_skew_spread() {
    static const double root = [] {
        auto f = [](double u) { return skewness_of_spread(u); };
        auto tol = [](double a, double b) {
            return std::abs(b - a) <= 4.0 * std::numeric_limits<double>::epsilon() * std::abs(b);
        };
        std::uintmax_t max_iter = 200;
        const auto [lo, hi] =
            boost::math::tools::bisect(f, kSpreadLow, kSpreadHigh, tol, max_iter);
        return 0.5 * (lo + hi);
    }();
    return root;
}

double zero_skew_sigma(const ClosedFormParams& p) {
    require(p.slope > 0.0, "slope must be > 0");
    return std::sqrt(zero_skew_spread() / p.slope);
}

ClosedFormParams asymptotic_params(const PhysicalConfig& cfg, const LinkGeometry& geom,
                                   Regime regime, AsymptoticLimit limit) {
    const double zr = geom.rayleigh_length;
    const double d2 = geom.ue_distance * geom.ue_distance;
    const double c2 = std::cos(geom.ue_elevation) * std::cos(geom.ue_elevation);
    const double k = cfg.wavenumber;
    const double peak = field::peak_density(cfg, geom) * cfg.receiver_aperture;

    ClosedFormParams p;
    if (limit == AsymptoticLimit::FarRayleigh) {
        p.alpha = peak;
        p.slope = regime == Regime::InPlane ? k * d2 / (zr * c2) : k * d2 / zr;
    } else {
        p.alpha = peak * (zr * zr / d2) * c2;
        p.slope = regime == Regime::InPlane ? k * zr * c2 : k * zr;
    }
    return p;
}

}  // namespace rislink::analytic
