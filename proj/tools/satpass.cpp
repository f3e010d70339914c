// Command-line front end: access | network | conjunction subcommands over a
// JSON run config, with a few scalar overrides. Exit codes: 0 success,
// 1 config/usage error, 2 runtime error.

#include <cstdio>
#include <exception>
#include <filesystem>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "satpass/errors.hpp"
#include "satpass/report.hpp"

namespace {

struct CommonArgs {
    std::string config_file;
    std::string out_dir = ".";
    std::optional<double> duration_s;
    std::optional<double> step_s;
    std::optional<double> min_elev_deg;
    unsigned threads = 0;
};

void add_common_options(CLI::App* cmd, CommonArgs& args) {
    cmd->add_option("--config", args.config_file, "Run configuration (JSON)")->required();
    cmd->add_option("--out-dir", args.out_dir, "Output directory (created if missing)");
    cmd->add_option("--duration-s", args.duration_s, "Override mission duration [s]");
    cmd->add_option("--step-s", args.step_s, "Override sampling step [s]");
    cmd->add_option("--min-elev-deg", args.min_elev_deg,
                    "Override the elevation mask of every station [deg]");
    cmd->add_option("--threads", args.threads,
                    "Worker threads (0 = hardware concurrency); results are identical either way");
}

satpass::RunConfig load_with_overrides(const CommonArgs& args) {
    satpass::RunConfig config = satpass::load_run_config(args.config_file);
    if (args.duration_s) config.mission.duration_s = *args.duration_s;
    if (args.step_s) config.mission.sample_step_s = *args.step_s;
    if (args.min_elev_deg) config.min_elevation_override_deg = *args.min_elev_deg;
    config.threads = args.threads;
    try {
        config.mission.validate();
    } catch (const std::invalid_argument& e) {
        throw satpass::ConfigError(std::string("invalid mission parameters: ") + e.what());
    }
    return config;
}

void print_result(const satpass::ReportResult& result) {
    for (const auto& line : result.summary_lines) std::printf("%s\n", line.c_str());
    for (const auto& file : result.files_written)
        std::printf("wrote %s\n", file.string().c_str());
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"satpass: constellation ground-access metrics and conjunction screening"};
    app.require_subcommand(1);

    CommonArgs access_args, network_args, conjunction_args;
    CLI::App* access = app.add_subcommand(
        "access", "Per-(station, constellation) access-window metrics table");
    add_common_options(access, access_args);
    CLI::App* network = app.add_subcommand(
        "network", "Per-satellite access ratio over a ground-station network");
    add_common_options(network, network_args);
    CLI::App* conjunction = app.add_subcommand(
        "conjunction", "All-pairs closest-approach screening");
    add_common_options(conjunction, conjunction_args);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::fprintf(stderr, "usage error: %s\n", e.what());
        return 1;
    }

    try {
        satpass::ReportResult result;
        if (access->parsed()) {
            result = satpass::run_access_analysis(load_with_overrides(access_args),
                                                  access_args.out_dir);
        } else if (network->parsed()) {
            result = satpass::run_network_analysis(load_with_overrides(network_args),
                                                   network_args.out_dir);
        } else {
            result = satpass::run_conjunction_screen(load_with_overrides(conjunction_args),
                                                     conjunction_args.out_dir);
        }
        print_result(result);
        return 0;
    } catch (const satpass::ConfigError& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return 1;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    }
}
