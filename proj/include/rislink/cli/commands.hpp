#pragma once

#include <nlohmann/json.hpp>
#include <string>
#include <vector>

#include "rislink/cli/config.hpp"

namespace rislink::cli {

enum ExitCode : int {
    kExitOk = 0,
    kExitValidationFailed = 1,
    kExitConfigError = 2,
};

/// Closed-form summary per sigma: alpha, slope, snr_at_ue, mean, variance,
/// skewness and the zero-skew sigma (degrees).
nlohmann::json cmd_eval(const RunConfig& cfg);

/// CSV of x, pdf_analytic, cdf_analytic for the first sigma.
std::string cmd_dist(const RunConfig& cfg);

struct McOutputs {
    std::string histogram_csv;
    std::string ecdf_csv;
    nlohmann::json summary;
};

/// Monte-Carlo histogram, empirical CDF and summary for the first sigma.
/// `workers` changes only wall time.
McOutputs cmd_mc(const RunConfig& cfg, unsigned workers = 0);

struct SweepOutputs {
    std::string grid_csv;   // axis_value, sigma_deg, mean, skewness
    std::string locus_csv;  // axis_value, zero_skew_sigma_deg
};

SweepOutputs cmd_sweep(const RunConfig& cfg);

struct CheckResult {
    std::string group;
    std::string name;
    double expected = 0.0;
    double actual = 0.0;
    double tolerance = 0.0;
    bool pass = false;
};

struct ValidateOptions {
    /// Multiplies the alpha used by every closed-form check. Test hook for
    /// confirming that the report detects a broken model.
    double alpha_corruption = 1.0;
    unsigned workers = 0;
};

struct ValidationReport {
    std::vector<CheckResult> checks;
    bool all_pass() const;
    nlohmann::json to_json() const;
    std::string to_table() const;
};

/// Published operating points, Monte-Carlo oracle agreement and closed-form
/// property checks for the configured link. Amplitude settings (P_t/N_o, |R|,
/// G_r) rescale the expected SNR values.
ValidationReport cmd_validate(const RunConfig& cfg, const ValidateOptions& opts = {});

/// Whole command line, in process. Returns the exit code.
int run(int argc, const char* const* argv);

}  // namespace rislink::cli
