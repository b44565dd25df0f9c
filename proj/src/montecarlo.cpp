#include "rislink/montecarlo.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <random>
#include <thread>

#include "rislink/error.hpp"
#include "rislink/field.hpp"

namespace rislink::montecarlo {

std::string_view to_string(Model m) { return m == Model::Exact ? "exact" : "approx"; }

void MomentAccumulator::add(double x) {
    const double n1 = count;
    count += 1.0;
    const double delta = x - mean;
    const double delta_n = delta / count;
    const double term = delta * delta_n * n1;
    mean += delta_n;
    m3 += term * delta_n * (count - 2.0) - 3.0 * delta_n * m2;
    m2 += term;
}

MomentAccumulator MomentAccumulator::merge(const MomentAccumulator& a,
                                           const MomentAccumulator& b) {
    if (a.count == 0.0) return b;
    if (b.count == 0.0) return a;
    MomentAccumulator r;
    r.count = a.count + b.count;
    const double delta = b.mean - a.mean;
    const double n = r.count;
    r.mean = a.mean + delta * b.count / n;
    r.m2 = a.m2 + b.m2 + delta * delta * a.count * b.count / n;
    r.m3 = a.m3 + b.m3 +
           delta * delta * delta * a.count * b.count * (a.count - b.count) / (n * n) +
           3.0 * delta * (a.count * b.m2 - b.count * a.m2) / n;
    return r;
}

double EmpiricalDistribution::cdf(double x) const {
    const auto it = std::upper_bound(sorted_samples.begin(), sorted_samples.end(), x);
    return static_cast<double>(it - sorted_samples.begin()) /
           static_cast<double>(sorted_samples.size());
}

double EmpiricalDistribution::bin_width() const {
    return densities.empty() ? 0.0 : bin_edges[1] - bin_edges[0];
}

namespace {

struct ChunkResult {
    MomentAccumulator moments;
    std::size_t redraws = 0;
};

std::mt19937_64 chunk_engine(std::uint64_t seed, std::size_t chunk) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(chunk),
                      static_cast<std::uint32_t>(static_cast<std::uint64_t>(chunk) >> 32)};
    return std::mt19937_64(seq);
}

MomentAccumulator tree_merge(std::vector<MomentAccumulator> parts) {
    if (parts.empty()) return {};
    while (parts.size() > 1) {
        std::vector<MomentAccumulator> next;
        next.reserve((parts.size() + 1) / 2);
        for (std::size_t i = 0; i + 1 < parts.size(); i += 2) {
            next.push_back(MomentAccumulator::merge(parts[i], parts[i + 1]));
        }
        if (parts.size() % 2 == 1) next.push_back(parts.back());
        parts = std::move(next);
    }
    return parts.front();
}

}  // namespace

EmpiricalDistribution sample(const PhysicalConfig& cfg, const LinkGeometry& geom,
                             const SamplerSpec& spec) {
    require(spec.n_samples >= kMinSamples, "sample count must be >= 1000");
    require(spec.n_bins >= kMinBins, "bin count must be >= 10");
    require(std::isfinite(spec.regime.sigma) && spec.regime.sigma > 0.0,
            "pointing spread sigma must be > 0");

    const auto params = analytic::closed_form_params(cfg, geom, spec.regime.variant);
    const ObservationPoint ue = ue_position(geom);
    const double theta_ue = geom.ue_elevation;
    const double sigma = spec.regime.sigma;
    const bool in_plane = spec.regime.variant == analytic::Regime::InPlane;

    auto evaluate = [&](double error) {
        if (spec.model == Model::Approx) return analytic::snr_tilde(params, error);
        const BeamDirection b = in_plane
                                    ? error_angles_to_beam_direction(theta_ue, error, 0.0)
                                    : error_angles_to_beam_direction(theta_ue, 0.0, error);
        return field::snr_at_point(cfg, geom, b, ue);
    };

    const std::size_t n = spec.n_samples;
    const std::size_t n_chunks = (n + kChunkSize - 1) / kChunkSize;
    std::vector<double> samples(n);
    std::vector<ChunkResult> chunks(n_chunks);

    auto run_chunk = [&](std::size_t c) {
        auto engine = chunk_engine(spec.seed, c);
        std::normal_distribution<double> gauss(0.0, 1.0);
        ChunkResult& out = chunks[c];
        const std::size_t begin = c * kChunkSize;
        const std::size_t end = std::min(n, begin + kChunkSize);
        for (std::size_t i = begin; i < end; ++i) {
            double error = sigma * gauss(engine);
            while (in_plane ? !in_forward_half_space(theta_ue, error, 0.0)
                            : !in_forward_half_space(theta_ue, 0.0, error)) {
                ++out.redraws;
                error = sigma * gauss(engine);
            }
            const double v = evaluate(error);
            samples[i] = v;
            out.moments.add(v);
        }
    };

    unsigned workers = spec.workers != 0 ? spec.workers : std::thread::hardware_concurrency();
    workers = std::max(1u, std::min<unsigned>(workers, static_cast<unsigned>(n_chunks)));
    if (workers == 1) {
        for (std::size_t c = 0; c < n_chunks; ++c) run_chunk(c);
    } else {
        std::atomic<std::size_t> next{0};
        std::vector<std::thread> pool;
        pool.reserve(workers);
        for (unsigned w = 0; w < workers; ++w) {
            pool.emplace_back([&] {
                for (std::size_t c = next++; c < n_chunks; c = next++) run_chunk(c);
            });
        }
        for (auto& t : pool) t.join();
    }

    EmpiricalDistribution emp;
    emp.n_samples = n;
    emp.seed = spec.seed;

    std::vector<MomentAccumulator> parts;
    parts.reserve(n_chunks);
    for (const auto& c : chunks) {
        parts.push_back(c.moments);
        emp.redraws += c.redraws;
    }
    const MomentAccumulator total = tree_merge(std::move(parts));
    emp.mean = total.mean;
    emp.variance = total.m2 / (total.count - 1.0);
    const double pop_m2 = total.m2 / total.count;
    const double pop_m3 = total.m3 / total.count;
    emp.skewness = pop_m3 / std::pow(pop_m2, 1.5);

    const double upper = params.alpha * 1.001;
    const double width = upper / static_cast<double>(spec.n_bins);
    emp.bin_edges.resize(spec.n_bins + 1);
    for (std::size_t i = 0; i <= spec.n_bins; ++i) {
        emp.bin_edges[i] = upper * static_cast<double>(i) / static_cast<double>(spec.n_bins);
    }
    std::vector<std::size_t> counts(spec.n_bins, 0);
    for (double v : samples) {
        auto bin = static_cast<std::size_t>(v / width);
        counts[std::min(bin, spec.n_bins - 1)] += 1;
    }
    emp.densities.resize(spec.n_bins);
    for (std::size_t i = 0; i < spec.n_bins; ++i) {
        emp.densities[i] = static_cast<double>(counts[i]) / (static_cast<double>(n) * width);
    }

    std::sort(samples.begin(), samples.end());
    emp.sorted_samples = std::move(samples);
    return emp;
}

double ks_distance(const EmpiricalDistribution& emp, const analytic::ClosedFormParams& p,
                   double sigma) {
    require(!emp.sorted_samples.empty(), "empirical distribution is empty");
    const auto& xs = emp.sorted_samples;
    const double n = static_cast<double>(xs.size());
    double worst = 0.0;
    // A sample of exactly 0 is an underflow of a value in (0, denorm_min]. Those
    // are left-censored: only the empirical CDF at denorm_min is known.
    constexpr double floor = std::numeric_limits<double>::denorm_min();
    for (std::size_t i = 0; i < xs.size(); ++i) {
        const double f = analytic::cdf(p, sigma, std::max(xs[i], floor));
        const double above = static_cast<double>(i + 1) / n - f;
        const double below = xs[i] > 0.0 ? f - static_cast<double>(i) / n : 0.0;
        worst = std::max({worst, above, below});
    }
    return worst;
}

double ks_distance(const EmpiricalDistribution& a, const EmpiricalDistribution& b) {
    require(!a.sorted_samples.empty() && !b.sorted_samples.empty(),
            "empirical distribution is empty");
    const auto& xa = a.sorted_samples;
    const auto& xb = b.sorted_samples;
    const double na = static_cast<double>(xa.size());
    const double nb = static_cast<double>(xb.size());
    std::size_t i = 0;
    std::size_t j = 0;
    double worst = 0.0;
    while (i < xa.size() && j < xb.size()) {
        const double x = std::min(xa[i], xb[j]);
        while (i < xa.size() && xa[i] <= x) ++i;
        while (j < xb.size() && xb[j] <= x) ++j;
        worst = std::max(worst, std::abs(static_cast<double>(i) / na -
                                         static_cast<double>(j) / nb));
    }
    return worst;
}

}  // namespace rislink::montecarlo

namespace rislink::montecarlo {

MomentStandardErrors moment_standard_errors(const analytic::ClosedFormParams& p, double sigma,
                                            std::size_t n_samples) {
    // Work in units of alpha; rescale at the end.
    const analytic::ClosedFormParams unit{1.0, p.slope};
    double mu[7];
    for (int k = 0; k <= 6; ++k) mu[k] = analytic::raw_moment(unit, sigma, k);
    double cov[3][3];
    for (int i = 0; i < 3; ++i) {
        for (int j = 0; j < 3; ++j) cov[i][j] = mu[i + j + 2] - mu[i + 1] * mu[j + 1];
    }
    auto quad_form = [&](const double (&g)[3]) {
        double s = 0.0;
        for (int i = 0; i < 3; ++i) {
            for (int j = 0; j < 3; ++j) s += g[i] * cov[i][j] * g[j];
        }
        return s;
    };

    const double m1 = mu[1];
    const double m2 = mu[2];
    const double m3 = mu[3];
    const double v = m2 - m1 * m1;
    const double c3 = m3 - 3.0 * m1 * m2 + 2.0 * m1 * m1 * m1;

    const double g_mean[3] = {1.0, 0.0, 0.0};
    const double g_var[3] = {-2.0 * m1, 1.0, 0.0};
    const double dc3[3] = {-3.0 * m2 + 6.0 * m1 * m1, -3.0 * m1, 1.0};
    const double dv[3] = {-2.0 * m1, 1.0, 0.0};
    double g_skew[3];
    for (int i = 0; i < 3; ++i) {
        g_skew[i] = dc3[i] / std::pow(v, 1.5) - 1.5 * c3 * std::pow(v, -2.5) * dv[i];
    }

    const double n = static_cast<double>(n_samples);
    MomentStandardErrors se;
    se.mean = p.alpha * std::sqrt(quad_form(g_mean) / n);
    se.variance = p.alpha * p.alpha * std::sqrt(quad_form(g_var) / n);
    se.skewness = std::sqrt(quad_form(g_skew) / n);
    return se;
}

}  // namespace rislink::montecarlo
