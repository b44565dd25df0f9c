#pragma once

// Run configuration as seen at the command-line boundary: degrees, Hz, metres
// and dB. resolve() converts it once into the radian/linear model types.

#include <cstdint>
#include <nlohmann/json.hpp>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "rislink/analytic.hpp"
#include "rislink/geometry.hpp"
#include "rislink/montecarlo.hpp"

namespace rislink::cli {

/// Malformed or inconsistent configuration (exit code 2).
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

enum class SweepAxis { FootprintRadius, UeElevation, UeDistance };

struct AxisSpec {
    SweepAxis axis = SweepAxis::FootprintRadius;
    double min = 0.0;  // axis units: m for wris and due, degrees for theta
    double max = 0.0;
    std::size_t steps = 50;

    bool operator==(const AxisSpec&) const = default;
};

struct SigmaRange {
    double min_deg = 0.1;
    double max_deg = 10.0;
    std::size_t steps = 50;

    bool operator==(const SigmaRange&) const = default;
};

struct RunConfig {
    double frequency_hz = 140e9;
    double power_noise_ratio_db = 20.0;
    double reflection_magnitude = 1.0;
    double receiver_gain_db = 40.0;
    std::optional<double> footprint_radius_m = 0.25;
    std::optional<double> ap_distance_m;
    std::optional<double> ap_gain_db;
    double ue_distance_m = 2.0;
    double ue_elevation_deg = 0.0;
    double ue_azimuth_deg = 0.0;
    double ap_elevation_deg = 0.0;
    double ap_azimuth_deg = 0.0;

    analytic::Regime regime = analytic::Regime::InPlane;
    std::vector<double> sigma_deg;  // explicit list; wins over sigma_range
    std::optional<SigmaRange> sigma_range;
    std::optional<AxisSpec> axis;

    montecarlo::Model model = montecarlo::Model::Exact;
    std::size_t n_samples = 1'000'000;
    std::uint64_t seed = 42;
    std::size_t bins = 100;
    std::size_t grid_points = 500;

    std::string out;  // invocation detail, not part of provenance

    bool operator==(const RunConfig&) const = default;
};

/// Model-side view of a RunConfig.
struct ResolvedRun {
    PhysicalConfig physics;
    LinkGeometry geometry;
    analytic::Regime regime = analytic::Regime::InPlane;
};

/// Parses a JSON object; unknown keys and wrong types raise ConfigError.
RunConfig parse_config(const nlohmann::json& j);
RunConfig parse_config_text(const std::string& text);
RunConfig load_config(const std::string& path);

/// Full effective config. With include_invocation = false the output path is
/// left out, which is the form embedded in output files.
nlohmann::json to_json(const RunConfig& cfg, bool include_invocation = true);

/// Applies one "key=value" override; value is parsed as JSON, falling back to
/// a plain string.
void apply_override(RunConfig& cfg, const std::string& assignment);

/// Validates the physics and geometry; throws ConfigError naming the rule.
ResolvedRun resolve(const RunConfig& cfg);

/// Same physical link with one geometry axis moved.
RunConfig with_axis_value(RunConfig cfg, SweepAxis axis, double value);

/// Sigma list in radians for commands that evaluate a handful of points.
std::vector<double> point_sigmas(const RunConfig& cfg);
/// Sigma list in radians for sweeps (defaults to 0.1..10 deg in 50 steps).
std::vector<double> sweep_sigmas(const RunConfig& cfg);

AxisSpec default_axis(SweepAxis axis);
std::vector<double> axis_values(const AxisSpec& spec);

std::string axis_name(SweepAxis axis);
SweepAxis parse_axis(const std::string& name);
analytic::Regime parse_regime(const std::string& name);
montecarlo::Model parse_model(const std::string& name);

}  // namespace rislink::cli
