#include "rislink/cli/commands.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>

#include "rislink/analytic.hpp"
#include "rislink/field.hpp"
#include "rislink/montecarlo.hpp"
#include "rislink/units.hpp"

namespace rislink::cli {

using nlohmann::json;

namespace {

std::string provenance_header(const std::string& command, const RunConfig& cfg) {
    return fmt::format("# rislink {}\n# config: {}\n", command, to_json(cfg, false).dump());
}

std::string num(double v) { return fmt::format("{:.12g}", v); }

json envelope(const std::string& command, const RunConfig& cfg) {
    return {{"command", command}, {"config", to_json(cfg, false)}, {"seed", cfg.seed}};
}

}  // namespace

json cmd_eval(const RunConfig& cfg) {
    const ResolvedRun run = resolve(cfg);
    const auto params = analytic::closed_form_params(run.physics, run.geometry, run.regime);
    const double at_ue = field::snr_at_ue(run.physics, run.geometry);
    const double sigma_star = rad_to_deg(analytic::zero_skew_sigma(params));

    json out = envelope("eval", cfg);
    json rows = json::array();
    for (double sigma : point_sigmas(cfg)) {
        rows.push_back({{"sigma_deg", rad_to_deg(sigma)},
                        {"alpha", params.alpha},
                        {"slope", params.slope},
                        {"snr_at_ue", at_ue},
                        {"mean", analytic::mean(params, sigma)},
                        {"variance", analytic::variance(params, sigma)},
                        {"skewness", analytic::skewness(params, sigma)},
                        {"zero_skew_sigma_deg", sigma_star}});
    }
    out["results"] = std::move(rows);
    return out;
}

std::string cmd_dist(const RunConfig& cfg) {
    const ResolvedRun run = resolve(cfg);
    const auto params = analytic::closed_form_params(run.physics, run.geometry, run.regime);
    const double sigma = point_sigmas(cfg).front();
    const std::size_t n = cfg.grid_points;
    const double inset = 1e-4 * params.alpha;
    const double span = params.alpha - 2.0 * inset;

    std::string csv = provenance_header("dist", cfg);
    csv += "x,pdf_analytic,cdf_analytic\n";
    for (std::size_t i = 0; i < n; ++i) {
        const double x = inset + span * static_cast<double>(i) / static_cast<double>(n - 1);
        csv += fmt::format("{},{},{}\n", num(x), num(analytic::pdf(params, sigma, x)),
                           num(analytic::cdf(params, sigma, x)));
    }
    return csv;
}

McOutputs cmd_mc(const RunConfig& cfg, unsigned workers) {
    const ResolvedRun run = resolve(cfg);
    const auto params = analytic::closed_form_params(run.physics, run.geometry, run.regime);
    const double sigma = point_sigmas(cfg).front();

    montecarlo::SamplerSpec spec;
    spec.regime = {run.regime, sigma};
    spec.model = cfg.model;
    spec.n_samples = cfg.n_samples;
    spec.seed = cfg.seed;
    spec.n_bins = cfg.bins;
    spec.workers = workers;
    const auto emp = montecarlo::sample(run.physics, run.geometry, spec);

    McOutputs out;
    out.histogram_csv = provenance_header("mc", cfg);
    out.histogram_csv += "bin_center,density\n";
    for (std::size_t i = 0; i < emp.densities.size(); ++i) {
        const double center = 0.5 * (emp.bin_edges[i] + emp.bin_edges[i + 1]);
        out.histogram_csv += fmt::format("{},{}\n", num(center), num(emp.densities[i]));
    }

    out.ecdf_csv = provenance_header("mc", cfg);
    out.ecdf_csv += "quantile,x,ecdf,cdf_analytic\n";
    const std::size_t n = emp.sorted_samples.size();
    const std::size_t q_count = std::min(cfg.grid_points, n);
    for (std::size_t i = 0; i < q_count; ++i) {
        const double q = (static_cast<double>(i) + 0.5) / static_cast<double>(q_count);
        const auto idx = std::min(n - 1, static_cast<std::size_t>(q * static_cast<double>(n)));
        const double x = emp.sorted_samples[idx];
        out.ecdf_csv += fmt::format("{},{},{},{}\n", num(q), num(x), num(emp.cdf(x)),
                                    num(analytic::cdf(params, sigma, x)));
    }

    out.summary = envelope("mc", cfg);
    out.summary["model"] = std::string(montecarlo::to_string(cfg.model));
    out.summary["regime"] = std::string(analytic::to_string(run.regime));
    out.summary["sigma_deg"] = rad_to_deg(sigma);
    out.summary["n_samples"] = emp.n_samples;
    out.summary["redraws"] = emp.redraws;
    out.summary["ks_distance"] = montecarlo::ks_distance(emp, params, sigma);
    out.summary["empirical"] = {
        {"mean", emp.mean}, {"variance", emp.variance}, {"skewness", emp.skewness}};
    out.summary["analytic"] = {{"alpha", params.alpha},
                               {"slope", params.slope},
                               {"mean", analytic::mean(params, sigma)},
                               {"variance", analytic::variance(params, sigma)},
                               {"skewness", analytic::skewness(params, sigma)}};
    return out;
}

SweepOutputs cmd_sweep(const RunConfig& cfg) {
    resolve(cfg);
    const AxisSpec axis = cfg.axis.value_or(default_axis(SweepAxis::FootprintRadius));
    const auto sigmas = sweep_sigmas(cfg);

    SweepOutputs out;
    out.grid_csv = provenance_header("sweep", cfg);
    out.grid_csv += "axis_value,sigma_deg,mean,skewness\n";
    out.locus_csv = provenance_header("sweep", cfg);
    out.locus_csv += "axis_value,zero_skew_sigma_deg\n";

    for (double value : axis_values(axis)) {
        const ResolvedRun run = resolve(with_axis_value(cfg, axis.axis, value));
        const auto params = analytic::closed_form_params(run.physics, run.geometry, run.regime);
        for (double sigma : sigmas) {
            out.grid_csv += fmt::format("{},{},{},{}\n", num(value), num(rad_to_deg(sigma)),
                                        num(analytic::mean(params, sigma)),
                                        num(analytic::skewness(params, sigma)));
        }
        out.locus_csv += fmt::format("{},{}\n", num(value),
                                     num(rad_to_deg(analytic::zero_skew_sigma(params))));
    }
    return out;
}

}  // namespace rislink::cli
