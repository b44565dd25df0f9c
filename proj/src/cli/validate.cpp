#include <fmt/format.h>

#include <cmath>

#include "rislink/analytic.hpp"
#include "rislink/cli/commands.hpp"
#include "rislink/montecarlo.hpp"
#include "rislink/quadrature.hpp"
#include "rislink/units.hpp"

namespace rislink::cli {

using nlohmann::json;

namespace {

// Reference operating points at P_t/N_o = 20 dB, |R| = 1, G_r = 40 dB.
constexpr double kRefPowerNoise = 100.0;
constexpr double kRefReceiverGain = 1e4;

struct OperatingPoint {
    SweepAxis axis;
    double axis_value;
    double sigma_deg;
    double expected;
};

struct CdfPoint {
    double sigma_deg;
    double x;
    double expected;
};

constexpr CdfPoint kCdfPoints[] = {
    {0.1, 2.0, 0.0}, {5.0, 2.0, 0.42}, {9.0, 2.0, 0.66},
    {3.0, 0.5, 0.016}, {3.0, 3.0, 0.43}, {3.0, 3.7, 0.9},
};

constexpr OperatingPoint kMeanPoints[] = {
    {SweepAxis::FootprintRadius, 0.25, 1.0, 3.6},   {SweepAxis::FootprintRadius, 0.30, 1.0, 2.5},
    {SweepAxis::FootprintRadius, 0.23, 3.0, 3.25},  {SweepAxis::FootprintRadius, 0.23, 4.0, 2.82},
    {SweepAxis::FootprintRadius, 0.23, 6.0, 2.1},   {SweepAxis::FootprintRadius, 0.40, 3.0, 1.28},
    {SweepAxis::FootprintRadius, 0.40, 4.0, 1.2},   {SweepAxis::FootprintRadius, 0.40, 6.0, 1.0},
    {SweepAxis::FootprintRadius, 0.20, 0.1, 5.8},   {SweepAxis::UeElevation, 0.0, 6.0, 1.905},
    {SweepAxis::UeElevation, 30.0, 6.0, 1.707},     {SweepAxis::UeElevation, 60.0, 6.0, 1.063},
    {SweepAxis::UeElevation, 10.0, 0.5, 3.679},     {SweepAxis::UeElevation, 10.0, 6.5, 1.768},
    {SweepAxis::UeElevation, 60.0, 0.5, 3.568},     {SweepAxis::UeElevation, 60.0, 6.5, 0.987},
    {SweepAxis::UeDistance, 2.0, 1.0, 3.58},        {SweepAxis::UeDistance, 2.0, 3.0, 2.85},
    {SweepAxis::UeDistance, 6.0, 1.0, 2.85},        {SweepAxis::UeDistance, 6.0, 5.0, 0.86},
    {SweepAxis::UeDistance, 20.0, 1.0, 1.23},       {SweepAxis::UeDistance, 20.0, 3.0, 0.43},
};

constexpr OperatingPoint kSkewPoints[] = {
    {SweepAxis::UeElevation, 10.0, 1.5, -2.0},  {SweepAxis::UeElevation, 60.0, 1.5, -1.49},
    {SweepAxis::UeElevation, 5.0, 5.0, -0.32},  {SweepAxis::UeElevation, 45.0, 5.0, 0.16},
    {SweepAxis::UeElevation, 0.0, 10.0, 0.64},  {SweepAxis::UeElevation, 60.0, 10.0, 1.62},
    {SweepAxis::UeDistance, 5.0, 0.3, -2.0},    {SweepAxis::UeDistance, 20.0, 0.3, -1.08},
    {SweepAxis::UeDistance, 15.0, 0.7, -0.29},  {SweepAxis::UeDistance, 15.0, 1.2, 0.38},
    {SweepAxis::UeDistance, 3.0, 4.0, -0.07},   {SweepAxis::UeDistance, 3.0, 5.0, 0.24},
};

constexpr double kOracleSigmasDeg[] = {1.0, 2.5, 4.0, 6.26, 9.5};
constexpr double kOracleDistances[] = {1.0, 2.0, 5.0, 10.0, 20.0};

std::string point_label(const OperatingPoint& p) {
    switch (p.axis) {
        case SweepAxis::FootprintRadius:
            return fmt::format("w={:g}cm sigma={:g}deg", p.axis_value * 100.0, p.sigma_deg);
        case SweepAxis::UeElevation:
            return fmt::format("theta={:g}deg sigma={:g}deg", p.axis_value, p.sigma_deg);
        case SweepAxis::UeDistance:
            return fmt::format("d={:g}m sigma={:g}deg", p.axis_value, p.sigma_deg);
    }
    return "";
}

class Checker {
public:
    explicit Checker(std::vector<CheckResult>& out) : out_(out) {}

    void within(std::string group, std::string name, double expected, double actual,
                double tol) {
        out_.push_back({std::move(group), std::move(name), expected, actual, tol,
                        std::isfinite(actual) && std::abs(actual - expected) <= tol});
    }

    void at_most(std::string group, std::string name, double bound, double actual) {
        out_.push_back({std::move(group), std::move(name), bound, actual, 0.0,
                        std::isfinite(actual) && actual <= bound});
    }

private:
    std::vector<CheckResult>& out_;
};

}  // namespace

bool ValidationReport::all_pass() const {
    for (const auto& c : checks) {
        if (!c.pass) return false;
    }
    return true;
}

json ValidationReport::to_json() const {
    json rows = json::array();
    std::size_t failed = 0;
    for (const auto& c : checks) {
        rows.push_back({{"group", c.group},
                        {"name", c.name},
                        {"expected", c.expected},
                        {"actual", c.actual},
                        {"tolerance", c.tolerance},
                        {"pass", c.pass}});
        if (!c.pass) ++failed;
    }
    return {{"checks", rows}, {"failed", failed}, {"total", checks.size()}, {"pass", failed == 0}};
}

std::string ValidationReport::to_table() const {
    std::string s = fmt::format("{:<6} {:<16} {:<44} {:>12} {:>12} {:>10}\n", "status", "group",
                                "check", "expected", "actual", "tol");
    std::size_t failed = 0;
    for (const auto& c : checks) {
        s += fmt::format("{:<6} {:<16} {:<44} {:>12.6g} {:>12.6g} {:>10.3g}\n",
                         c.pass ? "PASS" : "FAIL", c.group, c.name, c.expected, c.actual,
                         c.tolerance);
        if (!c.pass) ++failed;
    }
    s += fmt::format("{} of {} checks passed\n", checks.size() - failed, checks.size());
    return s;
}

ValidationReport cmd_validate(const RunConfig& cfg, const ValidateOptions& opts) {
    const ResolvedRun base = resolve(cfg);
    const double amplitude = base.physics.power_noise_ratio * base.physics.reflection_magnitude *
                             base.physics.reflection_magnitude * base.physics.receiver_gain /
                             (kRefPowerNoise * kRefReceiverGain);

    auto params_for = [&](const RunConfig& c) {
        const ResolvedRun r = resolve(c);
        auto p = analytic::closed_form_params(r.physics, r.geometry, r.regime);
        p.alpha *= opts.alpha_corruption;
        return p;
    };
    auto params_at = [&](const OperatingPoint& op) {
        return params_for(with_axis_value(cfg, op.axis, op.axis_value));
    };

    ValidationReport report;
    Checker check(report.checks);

    const auto p0 = params_for(cfg);
    check.within("aligned", "mean at sigma=0.1deg", 3.714 * amplitude,
                 analytic::mean(p0, deg_to_rad(0.1)), 0.01 * amplitude);

    for (const auto& c : kCdfPoints) {
        check.within("cdf", fmt::format("x={:g} sigma={:g}deg", c.x, c.sigma_deg), c.expected,
                     analytic::cdf(p0, deg_to_rad(c.sigma_deg), c.x * amplitude), 0.01);
    }
    for (const auto& m : kMeanPoints) {
        check.within("mean", point_label(m), m.expected * amplitude,
                     analytic::mean(params_at(m), deg_to_rad(m.sigma_deg)), 0.015 * amplitude);
    }
    for (const auto& s : kSkewPoints) {
        check.within("skewness", point_label(s), s.expected,
                     analytic::skewness(params_at(s), deg_to_rad(s.sigma_deg)), 0.03);
    }

    // Approximate model sampled against its own closed forms.
    const double n = static_cast<double>(cfg.n_samples);
    const double ks_band = 1.63 / std::sqrt(n);
    for (double d : kOracleDistances) {
        RunConfig c = with_axis_value(cfg, SweepAxis::UeDistance, d);
        const ResolvedRun r = resolve(c);
        const auto p = params_for(c);
        for (double sd : kOracleSigmasDeg) {
            const double sigma = deg_to_rad(sd);
            montecarlo::SamplerSpec spec;
            spec.regime = {r.regime, sigma};
            spec.model = montecarlo::Model::Approx;
            spec.n_samples = cfg.n_samples;
            spec.seed = cfg.seed;
            spec.n_bins = cfg.bins;
            spec.workers = opts.workers;
            const auto emp = montecarlo::sample(r.physics, r.geometry, spec);
            const auto se = montecarlo::moment_standard_errors(p, sigma, cfg.n_samples);
            const std::string label = fmt::format("d={:g}m sigma={:g}deg", d, sd);
            check.at_most("oracle-approx", "KS " + label, ks_band,
                          montecarlo::ks_distance(emp, p, sigma));
            check.within("oracle-approx", "mean " + label, analytic::mean(p, sigma), emp.mean,
                         3.0 * se.mean);
            check.within("oracle-approx", "variance " + label, analytic::variance(p, sigma),
                         emp.variance, 3.0 * se.variance);
            check.within("oracle-approx", "skewness " + label, analytic::skewness(p, sigma),
                         emp.skewness, 3.0 * se.skewness);
        }
    }

    // Exact field model against the closed-form CDF.
    for (const auto& [sd, bound] : {std::pair{2.5, 0.02}, {6.26, 0.05}, {9.5, 0.05}}) {
        const double sigma = deg_to_rad(sd);
        montecarlo::SamplerSpec spec;
        spec.regime = {base.regime, sigma};
        spec.model = montecarlo::Model::Exact;
        spec.n_samples = cfg.n_samples;
        spec.seed = cfg.seed;
        spec.n_bins = cfg.bins;
        spec.workers = opts.workers;
        const auto emp = montecarlo::sample(base.physics, base.geometry, spec);
        check.at_most("oracle-exact", fmt::format("KS sigma={:g}deg", sd), bound,
                      montecarlo::ks_distance(emp, p0, sigma));
    }

    // Closed-form identities by quadrature of the density.
    const double sigma_q = deg_to_rad(2.5);
    check.within("property", "pdf normalisation sigma=2.5deg", 1.0,
                 quadrature::total_probability(p0, sigma_q), 1e-6);
    for (int k = 1; k <= 3; ++k) {
        const double closed = analytic::raw_moment(p0, sigma_q, k);
        check.within("property", fmt::format("E[SNR^{}] quadrature sigma=2.5deg", k), closed,
                     quadrature::moment(p0, sigma_q, k), 1e-6 * std::abs(closed));
    }
    const auto far = analytic::asymptotic_params(base.physics, base.geometry,
                                                 analytic::Regime::NormalPlane,
                                                 analytic::AsymptoticLimit::FarRayleigh);
    const auto exact_normal = analytic::closed_form_params(base.physics, base.geometry,
                                                           analytic::Regime::NormalPlane);
    check.within("property", "far-Rayleigh zeta", exact_normal.slope, far.slope,
                 1e-3 * exact_normal.slope);
    check.within("property", "zero-skew sigma (deg)", 6.26,
                 rad_to_deg(analytic::zero_skew_sigma(p0)), 0.05);

    return report;
}

}  // namespace rislink::cli
