#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "satpass/access.hpp"
#include "satpass/conjunction.hpp"
#include "satpass/walker.hpp"

namespace satpass {

inline constexpr std::string_view SATPASS_VERSION = "0.1.0";

struct ConjunctionSettings {
    double threshold_km = 1.0;
    double coarse_step_s = 30.0;
};

/// One run configuration, loaded from JSON. Relative paths resolve against
/// the config file's directory.
struct RunConfig {
    MissionConfig mission;
    std::vector<std::filesystem::path> constellation_files;
    std::filesystem::path stations_file;
    std::optional<std::filesystem::path> network_stations_file;
    std::vector<int> network_sizes;           // empty means "full station list"
    std::optional<double> link_rate_bps;
    std::optional<ConjunctionSettings> conjunction;

    // CLI overrides
    std::optional<double> min_elevation_override_deg;
    unsigned threads = 0;

    std::filesystem::path config_path;
};

/// Parses and validates a run config; every referenced file must exist.
/// Throws ConfigError on any problem.
RunConfig load_run_config(const std::filesystem::path& file);

struct ReportResult {
    std::vector<std::filesystem::path> files_written;
    std::vector<std::string> summary_lines;
};

/// Table-shaped access analysis: one metrics row per (station,
/// constellation) pair into access_table.csv (station-major order), a
/// per-shell breakdown into access_table_by_shell.csv when any
/// constellation has more than one shell, and a reproducibility manifest.
/// Multi-shell constellation rows average the per-shell metrics unweighted;
/// gamma is recomputed from the averaged access time.
ReportResult run_access_analysis(const RunConfig& config, const std::filesystem::path& out_dir);

/// Station-network union analysis into network_ratio.csv: one row per
/// constellation per requested station-count prefix of the network file.
ReportResult run_network_analysis(const RunConfig& config, const std::filesystem::path& out_dir);

/// All-pairs conjunction screen over every configured constellation into
/// conjunction_events.csv.
ReportResult run_conjunction_screen(const RunConfig& config, const std::filesystem::path& out_dir);

}  // namespace satpass
