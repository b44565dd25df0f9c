#include <CLI11.hpp>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <set>

#include "rislink/cli/commands.hpp"
#include "rislink/error.hpp"

namespace rislink::cli {

namespace {

namespace fs = std::filesystem;

/// Directory prepended to relative output paths when set.
constexpr const char* kOutputDirEnv = "RISLINK_OUTPUT_DIR";

struct Flags {
    std::string config_path;
    std::vector<double> sigma_deg;
    std::string axis;
    std::size_t n = 0;
    std::uint64_t seed = 0;
    std::size_t bins = 0;
    std::string out;
    std::string model;
    std::string regime;
    std::vector<std::string> overrides;
    unsigned workers = 0;
    double corrupt_alpha = 1.0;
};

void add_common(CLI::App* cmd, Flags& f) {
    cmd->add_option("--config", f.config_path, "JSON config file");
    cmd->add_option("--sigma-deg", f.sigma_deg, "pointing spread(s) in degrees")->delimiter(',');
    cmd->add_option("--axis", f.axis, "sweep axis: wris|theta|due");
    cmd->add_option("--n", f.n, "Monte-Carlo sample count");
    cmd->add_option("--seed", f.seed, "Monte-Carlo seed");
    cmd->add_option("--bins", f.bins, "histogram bins");
    cmd->add_option("--out", f.out, "output path (file, or prefix for mc/sweep)");
    cmd->add_option("--model", f.model, "exact|approx");
    cmd->add_option("--regime", f.regime, "inplane|normal");
    cmd->add_option("--set", f.overrides, "config override key=value (repeatable)");
    cmd->add_option("--workers", f.workers, "sampler threads (0 = all cores)");
}

RunConfig build_config(const CLI::App* cmd, const Flags& f) {
    RunConfig cfg;
    std::set<std::string> file_keys;
    if (!f.config_path.empty()) {
        std::ifstream in(f.config_path);
        if (!in) throw ConfigError("cannot open config file '" + f.config_path + "'");
        nlohmann::json j;
        try {
            j = nlohmann::json::parse(in);
        } catch (const nlohmann::json::parse_error& e) {
            throw ConfigError(std::string("config is not valid JSON: ") + e.what());
        }
        cfg = parse_config(j);
        if (j.is_object()) {
            for (const auto& [k, v] : j.items()) file_keys.insert(k);
        }
    }
    for (const auto& o : f.overrides) apply_override(cfg, o);

    auto notice = [&](const std::string& key, const std::string& flag) {
        if (file_keys.count(key)) {
            std::cerr << "notice: " << flag << " overrides config key '" << key << "'\n";
        }
    };
    auto given = [&](const char* name) { return cmd->count(name) > 0; };

    if (given("--sigma-deg")) { notice("sigma_deg", "--sigma-deg"); cfg.sigma_deg = f.sigma_deg; }
    if (given("--axis")) { notice("axis", "--axis"); cfg.axis = default_axis(parse_axis(f.axis)); }
    if (given("--n")) { notice("n_samples", "--n"); cfg.n_samples = f.n; }
    if (given("--seed")) { notice("seed", "--seed"); cfg.seed = f.seed; }
    if (given("--bins")) { notice("bins", "--bins"); cfg.bins = f.bins; }
    if (given("--out")) { notice("out", "--out"); cfg.out = f.out; }
    if (given("--model")) { notice("model", "--model"); cfg.model = parse_model(f.model); }
    if (given("--regime")) { notice("regime", "--regime"); cfg.regime = parse_regime(f.regime); }
    return cfg;
}

fs::path output_path(const std::string& out) {
    fs::path p(out);
    if (const char* dir = std::getenv(kOutputDirEnv); dir && *dir && p.is_relative()) {
        p = fs::path(dir) / p;
    }
    return p;
}

void write_file(const fs::path& path, const std::string& content) {
    if (path.has_parent_path()) fs::create_directories(path.parent_path());
    std::ofstream f(path, std::ios::binary);
    if (!f) throw ConfigError("cannot write '" + path.string() + "'");
    f << content;
}

void emit(const std::string& out, const std::string& content) {
    if (out.empty()) {
        std::cout << content;
    } else {
        write_file(output_path(out), content);
    }
}

std::string strip_csv(std::string s) {
    if (s.size() > 4 && s.compare(s.size() - 4, 4, ".csv") == 0) s.resize(s.size() - 4);
    return s;
}

}  // namespace

int run(int argc, const char* const* argv) {
    CLI::App app{"Statistics of RIS-aided THz links under beam misalignment"};
    app.require_subcommand(1);
    Flags f;
    auto* eval = app.add_subcommand("eval", "closed-form summary per sigma");
    auto* dist = app.add_subcommand("dist", "analytic PDF/CDF curve");
    auto* mc = app.add_subcommand("mc", "Monte-Carlo histogram and summary");
    auto* sweep = app.add_subcommand("sweep", "mean/skewness grid over an axis and sigma");
    auto* validate = app.add_subcommand("validate", "acceptance matrix");
    for (auto* c : {eval, dist, mc, sweep, validate}) add_common(c, f);
    validate->add_option("--corrupt-alpha", f.corrupt_alpha)->group("");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitConfigError;
    }

    try {
        const CLI::App* cmd = app.get_subcommands().front();
        const RunConfig cfg = build_config(cmd, f);

        if (cmd == eval) {
            emit(cfg.out, cmd_eval(cfg).dump(2) + "\n");
        } else if (cmd == dist) {
            emit(cfg.out, cmd_dist(cfg));
        } else if (cmd == mc) {
            const auto res = cmd_mc(cfg, f.workers);
            const std::string prefix = cfg.out.empty() ? "mc" : cfg.out;
            write_file(output_path(prefix + "_hist.csv"), res.histogram_csv);
            write_file(output_path(prefix + "_ecdf.csv"), res.ecdf_csv);
            write_file(output_path(prefix + "_summary.json"), res.summary.dump(2) + "\n");
        } else if (cmd == sweep) {
            const auto res = cmd_sweep(cfg);
            const std::string prefix = strip_csv(cfg.out.empty() ? "sweep" : cfg.out);
            write_file(output_path(prefix + ".csv"), res.grid_csv);
            write_file(output_path(prefix + "_locus.csv"), res.locus_csv);
        } else {
            ValidateOptions opts;
            opts.alpha_corruption = f.corrupt_alpha;
            opts.workers = f.workers;
            const auto report = cmd_validate(cfg, opts);
            std::cout << report.to_table();
            if (!cfg.out.empty()) emit(cfg.out, report.to_json().dump(2) + "\n");
            if (!report.all_pass()) {
                for (const auto& c : report.checks) {
                    if (!c.pass) std::cerr << "failed: " << c.group << ": " << c.name << "\n";
                }
                return kExitValidationFailed;
            }
        }
    } catch (const ConfigError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitConfigError;
    } catch (const ValidationError& e) {
        std::cerr << "error: invalid configuration: " << e.what() << "\n";
        return kExitConfigError;
    }
    return kExitOk;
}

}  // namespace rislink::cli
