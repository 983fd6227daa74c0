#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "vlpmono/errors.hpp"
#include "vlpmono/localization.hpp"
#include "vlpmono/plots.hpp"
#include "vlpmono/scenario_io.hpp"
#include "vlpmono/simulation.hpp"

namespace {

namespace fs = std::filesystem;
using namespace vlpmono;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitBadInput = 2;
constexpr int kExitIo = 3;
constexpr int kExitSolver = 4;

void write_text_file(const fs::path& path, const std::string& content) {
    std::ofstream out(path);
    if (!out) {
        throw IoError("cannot write file: " + path.string());
    }
    out << content;
    if (!out) {
        throw IoError("write failed: " + path.string());
    }
}

// An unreadable or invalid input file is the user's problem (exit 2); IoError
// stays reserved for output-side failures (exit 3).
template <typename Fn>
auto load_input(Fn&& fn) {
    try {
        return fn();
    } catch (const IoError& e) {
        throw InputError(e.what());
    }
}

int cmd_simulate(const std::string& config_path, const std::string& out_dir,
                 std::int64_t seed_override, const std::string& method_override, bool quiet) {
    ScenarioConfig cfg = load_input([&] { return load_scenario(config_path); });
    if (seed_override >= 0) {
        cfg.seed = static_cast<std::uint64_t>(seed_override);
    }
    if (method_override == "tri") {
        cfg.method = SolverMethod::trilaterate;
    } else if (method_override == "lsq") {
        cfg.method = SolverMethod::least_squares;
    } else if (!method_override.empty()) {
        throw InputError("--method must be 'tri' or 'lsq'");
    }

    const auto results = run_scenario(cfg);

    std::error_code ec;
    fs::create_directories(out_dir, ec);
    if (ec) {
        throw IoError("cannot create output directory: " + out_dir);
    }

    std::ostringstream results_csv, summary_csv, cdf_csv;
    write_results_csv(results_csv, cfg.scenario_id, results);
    write_summary_csv(summary_csv, cfg.scenario_id, results);
    write_cdf_csv(cdf_csv, scenario_cdfs(results));
    write_text_file(fs::path(out_dir) / "results.csv", results_csv.str());
    write_text_file(fs::path(out_dir) / "summary.csv", summary_csv.str());
    write_text_file(fs::path(out_dir) / "cdf.csv", cdf_csv.str());
    export_plots(out_dir, out_dir);

    if (!quiet) {
        int failures = 0;
        for (const auto& point : results) {
            failures += point.failures;
        }
        std::cout << "scenario '" << cfg.scenario_id << "': " << results.size()
                  << " grid points, " << cfg.trials_per_point << " trials/point, " << failures
                  << " failed trials\n";
        std::cout << "wrote results.csv, summary.csv, cdf.csv and plot files to " << out_dir
                  << "\n";
    }
    return kExitOk;
}

int cmd_localize(const std::string& intrinsics_path, const std::string& transmitter_path,
                 const std::string& observations_path, const std::string& method_name,
                 bool quiet) {
    const CameraIntrinsics k = load_input([&] { return load_intrinsics(intrinsics_path); });
    const TransmitterModel transmitter =
        load_input([&] { return load_transmitter_json(transmitter_path); });
    const auto obs = load_input([&] { return load_observations_csv(observations_path, k); });

    const FeatureSet features = default_features(transmitter);
    const SolverMethod method =
        method_name == "lsq" ? SolverMethod::least_squares : SolverMethod::trilaterate;
    const LocalizationResult res =
        localize(obs, features, k, transmitter.center.z, method);

    std::cout << "{\"x_m\":" << format_g9(res.position.x)
              << ",\"y_m\":" << format_g9(res.position.y)
              << ",\"z_m\":" << format_g9(res.position.z)
              << ",\"depth_scale_m\":" << format_g9(res.depth_scale_m)
              << ",\"residual_rms_m\":" << format_g9(res.residual_rms_m) << "}\n";
    (void)quiet;
    return kExitOk;
}

int cmd_export_plots(const std::string& results_dir, const std::string& out_dir, bool quiet) {
    const auto written = export_plots(results_dir, out_dir.empty() ? results_dir : out_dir);
    if (!quiet) {
        for (const auto& path : written) {
            std::cout << "wrote " << path << "\n";
        }
    }
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Monocular positioning simulator for a single shaped ceiling luminaire"};
    app.require_subcommand(1);
    app.fallthrough();  // global flags may appear after the subcommand

    std::string config_path;
    std::string out_dir = "out";
    std::int64_t seed_override = -1;
    std::string method_override;
    bool quiet = false;
    app.add_flag("--quiet", quiet, "suppress progress output");

    auto* simulate = app.add_subcommand("simulate", "run a scenario over the receiver grid");
    simulate->add_option("--config", config_path, "scenario config file")->required();
    simulate->add_option("--out", out_dir, "output directory (default: out)");
    simulate->add_option("--seed", seed_override, "override the config seed")
        ->check(CLI::NonNegativeNumber);
    simulate->add_option("--method", method_override, "override the solver: tri|lsq");

    std::string intrinsics_path, transmitter_path, observations_path;
    std::string localize_method = "tri";
    auto* localize_cmd =
        app.add_subcommand("localize", "solve one snapshot from an observation file");
    localize_cmd->add_option("--intrinsics", intrinsics_path, "intrinsics key-value file")
        ->required();
    localize_cmd->add_option("--transmitter", transmitter_path, "transmitter JSON file")
        ->required();
    localize_cmd->add_option("--observations", observations_path, "CSV of label,u_um,v_um")
        ->required();
    localize_cmd->add_option("--method", localize_method, "solver: tri|lsq");

    std::string results_dir;
    std::string plots_out;
    auto* export_cmd =
        app.add_subcommand("export-plots", "regenerate plot data and SVGs from a results dir");
    export_cmd->add_option("--results", results_dir, "directory holding results.csv/cdf.csv")
        ->required();
    export_cmd->add_option("--out", plots_out, "output directory (default: results dir)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (simulate->parsed()) {
            return cmd_simulate(config_path, out_dir, seed_override, method_override, quiet);
        }
        if (localize_cmd->parsed()) {
            return cmd_localize(intrinsics_path, transmitter_path, observations_path,
                                localize_method, quiet);
        }
        return cmd_export_plots(results_dir, plots_out, quiet);
    } catch (const SolverError& e) {
        std::cerr << "solver error: " << e.what() << "\n";
        return kExitSolver;
    } catch (const InputError& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return kExitBadInput;
    } catch (const IoError& e) {
        std::cerr << "io error: " << e.what() << "\n";
        return kExitIo;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitBadInput;
    }
}
