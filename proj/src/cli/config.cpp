#include "rislink/cli/config.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include "rislink/error.hpp"
#include "rislink/units.hpp"

namespace rislink::cli {

using nlohmann::json;

namespace {

const std::set<std::string>& known_keys() {
    static const std::set<std::string> keys = {
        "frequency_hz",     "power_noise_ratio_db", "reflection_magnitude", "receiver_gain_db",
        "footprint_radius_m", "ap_distance_m",     "ap_gain_db",           "ue_distance_m",
        "ue_elevation_deg", "ue_azimuth_deg",       "ap_elevation_deg",     "ap_azimuth_deg",
        "regime",           "sigma_deg",            "sigma_range_deg",      "axis",
        "model",            "n_samples",            "seed",                 "bins",
        "grid_points",      "out"};
    return keys;
}

template <typename T>
T get_as(const json& j, const std::string& key) {
    try {
        return j.get<T>();
    } catch (const json::exception&) {
        throw ConfigError("config key '" + key + "' has the wrong type");
    }
}

double get_number(const json& j, const std::string& key) {
    if (!j.is_number()) throw ConfigError("config key '" + key + "' must be a number");
    return j.get<double>();
}

std::size_t get_count(const json& j, const std::string& key) {
    if (!j.is_number_integer() || j.get<long long>() < 0) {
        throw ConfigError("config key '" + key + "' must be a non-negative integer");
    }
    return j.get<std::size_t>();
}

void reject_unknown(const json& obj, const std::set<std::string>& allowed,
                    const std::string& where) {
    for (const auto& [k, v] : obj.items()) {
        if (!allowed.count(k)) throw ConfigError("unknown config key '" + where + k + "'");
    }
}

std::optional<double> optional_number(const json& j, const std::string& key) {
    if (j.is_null()) return std::nullopt;
    return get_number(j, key);
}

}  // namespace

std::string axis_name(SweepAxis axis) {
    switch (axis) {
        case SweepAxis::FootprintRadius: return "wris";
        case SweepAxis::UeElevation: return "theta";
        case SweepAxis::UeDistance: return "due";
    }
    return "";
}

SweepAxis parse_axis(const std::string& name) {
    if (name == "wris") return SweepAxis::FootprintRadius;
    if (name == "theta") return SweepAxis::UeElevation;
    if (name == "due") return SweepAxis::UeDistance;
    throw ConfigError("axis must be one of wris|theta|due, got '" + name + "'");
}

analytic::Regime parse_regime(const std::string& name) {
    if (name == "inplane") return analytic::Regime::InPlane;
    if (name == "normal") return analytic::Regime::NormalPlane;
    throw ConfigError("regime must be inplane|normal, got '" + name + "'");
}

montecarlo::Model parse_model(const std::string& name) {
    if (name == "exact") return montecarlo::Model::Exact;
    if (name == "approx") return montecarlo::Model::Approx;
    throw ConfigError("model must be exact|approx, got '" + name + "'");
}

AxisSpec default_axis(SweepAxis axis) {
    switch (axis) {
        case SweepAxis::FootprintRadius: return {axis, 0.01, 0.50, 50};
        case SweepAxis::UeElevation: return {axis, 0.0, 60.0, 61};
        case SweepAxis::UeDistance: return {axis, 2.0, 20.0, 50};
    }
    return {};
}

std::vector<double> axis_values(const AxisSpec& spec) {
    std::vector<double> v;
    if (spec.steps <= 1) return {spec.min};
    v.reserve(spec.steps);
    for (std::size_t i = 0; i < spec.steps; ++i) {
        const double t = static_cast<double>(i) / static_cast<double>(spec.steps - 1);
        v.push_back(spec.min + t * (spec.max - spec.min));
    }
    return v;
}

RunConfig parse_config(const json& j) {
    if (!j.is_object()) throw ConfigError("config must be a JSON object");
    reject_unknown(j, known_keys(), "");

    RunConfig c;
    for (const auto& [key, v] : j.items()) {
        if (key == "frequency_hz") c.frequency_hz = get_number(v, key);
        else if (key == "power_noise_ratio_db") c.power_noise_ratio_db = get_number(v, key);
        else if (key == "reflection_magnitude") c.reflection_magnitude = get_number(v, key);
        else if (key == "receiver_gain_db") c.receiver_gain_db = get_number(v, key);
        else if (key == "footprint_radius_m") c.footprint_radius_m = optional_number(v, key);
        else if (key == "ap_distance_m") c.ap_distance_m = optional_number(v, key);
        else if (key == "ap_gain_db") c.ap_gain_db = optional_number(v, key);
        else if (key == "ue_distance_m") c.ue_distance_m = get_number(v, key);
        else if (key == "ue_elevation_deg") c.ue_elevation_deg = get_number(v, key);
        else if (key == "ue_azimuth_deg") c.ue_azimuth_deg = get_number(v, key);
        else if (key == "ap_elevation_deg") c.ap_elevation_deg = get_number(v, key);
        else if (key == "ap_azimuth_deg") c.ap_azimuth_deg = get_number(v, key);
        else if (key == "regime") c.regime = parse_regime(get_as<std::string>(v, key));
        else if (key == "model") c.model = parse_model(get_as<std::string>(v, key));
        else if (key == "n_samples") c.n_samples = get_count(v, key);
        else if (key == "seed") {
            if (!v.is_number_unsigned()) throw ConfigError("config key 'seed' must be an unsigned integer");
            c.seed = v.get<std::uint64_t>();
        }
        else if (key == "bins") c.bins = get_count(v, key);
        else if (key == "grid_points") c.grid_points = get_count(v, key);
        else if (key == "out") c.out = get_as<std::string>(v, key);
        else if (key == "sigma_deg") {
            if (v.is_number()) {
                c.sigma_deg = {v.get<double>()};
            } else if (v.is_array()) {
                c.sigma_deg.clear();
                for (const auto& s : v) c.sigma_deg.push_back(get_number(s, key));
            } else {
                throw ConfigError("config key 'sigma_deg' must be a number or array");
            }
        } else if (key == "sigma_range_deg") {
            if (v.is_null()) { c.sigma_range.reset(); continue; }
            if (!v.is_object()) throw ConfigError("config key 'sigma_range_deg' must be an object");
            reject_unknown(v, {"min", "max", "steps"}, "sigma_range_deg.");
            SigmaRange r;
            if (v.contains("min")) r.min_deg = get_number(v["min"], "sigma_range_deg.min");
            if (v.contains("max")) r.max_deg = get_number(v["max"], "sigma_range_deg.max");
            if (v.contains("steps")) r.steps = get_count(v["steps"], "sigma_range_deg.steps");
            c.sigma_range = r;
        } else if (key == "axis") {
            if (v.is_null()) { c.axis.reset(); continue; }
            if (v.is_string()) { c.axis = default_axis(parse_axis(v.get<std::string>())); continue; }
            if (!v.is_object()) throw ConfigError("config key 'axis' must be a string or object");
            reject_unknown(v, {"name", "min", "max", "steps"}, "axis.");
            if (!v.contains("name")) throw ConfigError("config key 'axis.name' is required");
            AxisSpec a = default_axis(parse_axis(get_as<std::string>(v["name"], "axis.name")));
            if (v.contains("min")) a.min = get_number(v["min"], "axis.min");
            if (v.contains("max")) a.max = get_number(v["max"], "axis.max");
            if (v.contains("steps")) a.steps = get_count(v["steps"], "axis.steps");
            c.axis = a;
        }
    }
    return c;
}

RunConfig parse_config_text(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ConfigError(std::string("config is not valid JSON: ") + e.what());
    }
    return parse_config(j);
}

RunConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_config_text(ss.str());
}

json to_json(const RunConfig& c, bool include_invocation) {
    json j;
    j["frequency_hz"] = c.frequency_hz;
    j["power_noise_ratio_db"] = c.power_noise_ratio_db;
    j["reflection_magnitude"] = c.reflection_magnitude;
    j["receiver_gain_db"] = c.receiver_gain_db;
    j["footprint_radius_m"] = c.footprint_radius_m ? json(*c.footprint_radius_m) : json(nullptr);
    j["ap_distance_m"] = c.ap_distance_m ? json(*c.ap_distance_m) : json(nullptr);
    j["ap_gain_db"] = c.ap_gain_db ? json(*c.ap_gain_db) : json(nullptr);
    j["ue_distance_m"] = c.ue_distance_m;
    j["ue_elevation_deg"] = c.ue_elevation_deg;
    j["ue_azimuth_deg"] = c.ue_azimuth_deg;
    j["ap_elevation_deg"] = c.ap_elevation_deg;
    j["ap_azimuth_deg"] = c.ap_azimuth_deg;
    j["regime"] = std::string(analytic::to_string(c.regime));
    j["sigma_deg"] = c.sigma_deg;
    if (c.sigma_range) {
        j["sigma_range_deg"] = {{"min", c.sigma_range->min_deg},
                                {"max", c.sigma_range->max_deg},
                                {"steps", c.sigma_range->steps}};
    } else {
        j["sigma_range_deg"] = nullptr;
    }
    if (c.axis) {
        j["axis"] = {{"name", axis_name(c.axis->axis)},
                     {"min", c.axis->min},
                     {"max", c.axis->max},
                     {"steps", c.axis->steps}};
    } else {
        j["axis"] = nullptr;
    }
    j["model"] = std::string(montecarlo::to_string(c.model));
    j["n_samples"] = c.n_samples;
    j["seed"] = c.seed;
    j["bins"] = c.bins;
    j["grid_points"] = c.grid_points;
    if (include_invocation) j["out"] = c.out;
    return j;
}

void apply_override(RunConfig& cfg, const std::string& assignment) {
    const auto eq = assignment.find('=');
    if (eq == std::string::npos || eq == 0) {
        throw ConfigError("override must look like key=value, got '" + assignment + "'");
    }
    const std::string key = assignment.substr(0, eq);
    const std::string text = assignment.substr(eq + 1);
    json value = json::parse(text, nullptr, false);
    if (value.is_discarded()) value = text;

    json merged = to_json(cfg);
    if (!known_keys().count(key)) throw ConfigError("unknown config key '" + key + "'");
    merged[key] = value;
    cfg = parse_config(merged);
}

ResolvedRun resolve(const RunConfig& c) {
    try {
        ResolvedRun r;
        r.physics = PhysicalConfig::make(c.frequency_hz, db_to_linear(c.power_noise_ratio_db),
                                         c.reflection_magnitude, db_to_linear(c.receiver_gain_db));
        GeometryInput in;
        in.footprint_radius = c.footprint_radius_m;
        in.ap_distance = c.ap_distance_m;
        if (c.ap_gain_db) in.ap_gain = db_to_linear(*c.ap_gain_db);
        in.ue_distance = c.ue_distance_m;
        in.ue_elevation = deg_to_rad(c.ue_elevation_deg);
        in.ue_azimuth = deg_to_rad(c.ue_azimuth_deg);
        in.ap_elevation = deg_to_rad(c.ap_elevation_deg);
        in.ap_azimuth = deg_to_rad(c.ap_azimuth_deg);
        r.geometry = LinkGeometry::make(r.physics, in);
        r.regime = c.regime;

        require(c.n_samples >= montecarlo::kMinSamples, "n_samples must be >= 1000");
        require(c.bins >= montecarlo::kMinBins, "bins must be >= 10");
        require(c.grid_points >= 2, "grid_points must be >= 2");
        for (double s : c.sigma_deg) require(s > 0.0, "every sigma must be > 0");
        if (c.sigma_range) {
            require(c.sigma_range->min_deg > 0.0 && c.sigma_range->max_deg >= c.sigma_range->min_deg,
                    "sigma range must satisfy 0 < min <= max");
            require(c.sigma_range->steps >= 1, "sigma range needs >= 1 step");
        }
        if (c.axis) {
            require(c.axis->steps >= 1 && c.axis->max >= c.axis->min,
                    "axis range must satisfy min <= max with >= 1 step");
        }
        return r;
    } catch (const ValidationError& e) {
        throw ConfigError(std::string("invalid configuration: ") + e.what());
    }
}

RunConfig with_axis_value(RunConfig cfg, SweepAxis axis, double value) {
    switch (axis) {
        case SweepAxis::FootprintRadius:
            cfg.footprint_radius_m = value;
            cfg.ap_distance_m.reset();
            cfg.ap_gain_db.reset();
            break;
        case SweepAxis::UeElevation: cfg.ue_elevation_deg = value; break;
        case SweepAxis::UeDistance: cfg.ue_distance_m = value; break;
    }
    return cfg;
}

std::vector<double> point_sigmas(const RunConfig& cfg) {
    std::vector<double> deg = cfg.sigma_deg;
    if (deg.empty() && cfg.sigma_range) {
        deg = axis_values({SweepAxis::UeElevation, cfg.sigma_range->min_deg,
                           cfg.sigma_range->max_deg, cfg.sigma_range->steps});
    }
    if (deg.empty()) deg = {2.5};
    std::vector<double> rad;
    rad.reserve(deg.size());
    for (double d : deg) rad.push_back(deg_to_rad(d));
    return rad;
}

std::vector<double> sweep_sigmas(const RunConfig& cfg) {
    if (!cfg.sigma_deg.empty()) return point_sigmas(cfg);
    const SigmaRange r = cfg.sigma_range.value_or(SigmaRange{});
    std::vector<double> rad;
    for (double d : axis_values({SweepAxis::UeElevation, r.min_deg, r.max_deg, r.steps})) {
        rad.push_back(deg_to_rad(d));
    }
    return rad;
}

}  // namespace rislink::cli
