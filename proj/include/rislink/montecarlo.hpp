#pragma once

// Monte-Carlo oracle. Draws Gaussian pointing errors, pushes them through the
// exact field model or the closed-form approximation, and summarises the
// resulting SNR samples.

#include <cstddef>
#include <cstdint>
#include <string_view>
#include <vector>

#include "rislink/analytic.hpp"
#include "rislink/geometry.hpp"

namespace rislink::montecarlo {

enum class Model {
    Exact,   // full field model at the UE
    Approx,  // alpha * exp(-slope * dtheta^2)
};

std::string_view to_string(Model m);

inline constexpr std::size_t kMinSamples = 1000;
inline constexpr std::size_t kMinBins = 10;
/// Samples per random sub-stream. Fixed so that output does not depend on how
/// chunks are spread over workers.
inline constexpr std::size_t kChunkSize = std::size_t{1} << 16;

struct SamplerSpec {
    analytic::MisalignmentRegime regime;
    Model model = Model::Exact;
    std::size_t n_samples = 1'000'000;
    std::uint64_t seed = 1;
    std::size_t n_bins = 100;
    unsigned workers = 0;  // 0: hardware concurrency; never affects results
};

struct EmpiricalDistribution {
    std::vector<double> bin_edges;  // n_bins + 1 edges over [0, 1.001 alpha]
    std::vector<double> densities;  // n_bins, integrates to 1
    std::vector<double> sorted_samples;
    double mean = 0.0;
    double variance = 0.0;  // unbiased
    double skewness = 0.0;  // m3 / m2^(3/2) with population central moments
    std::size_t n_samples = 0;
    std::uint64_t seed = 0;
    std::size_t redraws = 0;  // draws rejected for leaving the forward half-space

    /// Fraction of samples <= x.
    double cdf(double x) const;
    double bin_width() const;
};

/// Draws spec.n_samples SNR values at the UE. Deterministic in (seed, n_samples).
EmpiricalDistribution sample(const PhysicalConfig& cfg, const LinkGeometry& geom,
                             const SamplerSpec& spec);

/// sup_x |F_emp(x) - F(x)| with F the closed-form CDF.
double ks_distance(const EmpiricalDistribution& emp, const analytic::ClosedFormParams& p,
                   double sigma);

/// Same statistic between two empirical distributions.
double ks_distance(const EmpiricalDistribution& a, const EmpiricalDistribution& b);

/// Large-N standard errors of the sample mean, variance and skewness when the
/// samples follow the closed-form distribution exactly. Delta method on the
/// raw moments E[SNR^k] = alpha^k / sqrt(1 + 2 k u), k <= 6.
struct MomentStandardErrors {
    double mean = 0.0;
    double variance = 0.0;
    double skewness = 0.0;
};

MomentStandardErrors moment_standard_errors(const analytic::ClosedFormParams& p, double sigma,
                                            std::size_t n_samples);

/// Running central moments that merge exactly (Chan et al. / Pebay).
struct MomentAccumulator {
    double count = 0.0;
    double mean = 0.0;
    double m2 = 0.0;
    double m3 = 0.0;

    void add(double x);
    static MomentAccumulator merge(const MomentAccumulator& a, const MomentAccumulator& b);
};

}  // namespace rislink::montecarlo
