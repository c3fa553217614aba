// tvcsim: scenario runner for the gimbal toolkit.
//
//   tvcsim bench|fly|stress|calibrate [-c scenario.ini] [options]
//
// A subcommand without a config runs the built-in defaults for that mode.
// With a config, the file's [scenario].mode must match the subcommand.
// Exit codes: 0 success, 1 config/validation error, 2 simulation or
// envelope failure, 3 I/O error.

#include <cstdint>
#include <filesystem>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "tvc/tvc.hpp"

namespace {

struct CliOptions {
    std::string config_path;
    std::string out_dir;
    std::string csv_override;
    std::string report_override;
    std::string calibrate_input;
    std::uint64_t seed = 0;
    bool seed_set = false;
    std::size_t workers = 1;
    bool print_config = false;
};

std::string resolve_output(const std::string& out_dir, const std::string& path) {
    namespace fs = std::filesystem;
    if (path.empty() || out_dir.empty() || fs::path(path).is_absolute()) return path;
    return (fs::path(out_dir) / path).string();
}

int run_mode(tvc::ScenarioMode mode, const CliOptions& opts) {
    tvc::Scenario sc;
    if (!opts.config_path.empty()) {
        sc = tvc::parse_scenario(tvc::read_file(opts.config_path));
        if (sc.mode != mode)
            throw std::invalid_argument(std::string("config mode '") + tvc::mode_name(sc.mode) +
                                        "' does not match subcommand '" + tvc::mode_name(mode) +
                                        "'");
    } else {
        sc.mode = mode;
    }
    if (opts.seed_set) sc.seed = opts.seed;
    if (!opts.csv_override.empty()) sc.outputs.csv = opts.csv_override;
    if (!opts.report_override.empty()) sc.outputs.report = opts.report_override;
    if (!opts.calibrate_input.empty()) sc.calibrate_input_csv = opts.calibrate_input;
    if (mode == tvc::ScenarioMode::calibrate && sc.calibrate_input_csv.empty())
        throw std::invalid_argument("calibrate needs [calibrate].input_csv or --input");

    if (opts.print_config) {
        std::cout << tvc::print_scenario(sc);
        return 0;
    }

    const tvc::ScenarioResult result = tvc::run_scenario(sc, opts.workers);

    if (!opts.out_dir.empty()) std::filesystem::create_directories(opts.out_dir);
    if (!sc.outputs.csv.empty() && result.csv)
        tvc::write_file(resolve_output(opts.out_dir, sc.outputs.csv), *result.csv);
    if (!sc.outputs.report.empty())
        tvc::write_file(resolve_output(opts.out_dir, sc.outputs.report), result.summary);

    std::cout << result.summary;
    if (result.envelope_checked && !result.envelope_pass) {
        std::cerr << "envelope check failed\n";
        return 2;
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"deterministic two-axis thrust-vector gimbal toolkit"};
    app.require_subcommand(1);

    CliOptions opts;
    tvc::ScenarioMode selected = tvc::ScenarioMode::bench;

    const auto add_common = [&](CLI::App* sub, tvc::ScenarioMode mode) {
        sub->add_option("-c,--config", opts.config_path, "scenario config file");
        sub->add_option("--seed", opts.seed, "override the master seed")
            ->each([&](const std::string&) { opts.seed_set = true; });
        sub->add_option("--out-dir", opts.out_dir,
                        "directory for relative output paths (created if missing)");
        sub->add_option("-o,--csv", opts.csv_override, "override the CSV output path");
        sub->add_option("--report", opts.report_override, "override the report output path");
        sub->add_flag("--print-config", opts.print_config,
                      "print the effective config and exit");
        sub->callback([&, mode] { selected = mode; });
        return sub;
    };

    CLI::App* bench = add_common(app.add_subcommand("bench", "benchtop trial batch"),
                                 tvc::ScenarioMode::bench);
    bench->add_option("--workers", opts.workers, "worker threads for the trial batch");
    add_common(app.add_subcommand("fly", "closed-loop flight run"), tvc::ScenarioMode::fly);
    add_common(app.add_subcommand("stress", "static structural checks"),
               tvc::ScenarioMode::stress);
    CLI::App* calibrate =
        add_common(app.add_subcommand("calibrate", "fit servo parameters from a trial CSV"),
                   tvc::ScenarioMode::calibrate);
    calibrate->add_option("--input", opts.calibrate_input, "trial CSV to fit");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        return run_mode(selected, opts);
    } catch (const tvc::SimulationError& e) {
        std::cerr << "simulation error: " << e.what() << "\n";
        return 2;
    } catch (const tvc::IoError& e) {
        std::cerr << "io error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
