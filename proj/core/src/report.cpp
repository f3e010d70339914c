#include "satpass/report.hpp"

#include <algorithm>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "detail/parallel.hpp"
#include "satpass/errors.hpp"

namespace satpass {

namespace {

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("cannot open file: " + path.string());
    std::stringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

std::string fnv1a64_hex(std::string_view data) {
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char c : data) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    char buf[20];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

std::string format_fraction(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

std::string format_seconds(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.3f", v);
    return buf;
}

std::string csv_escape(std::string_view field) {
    const bool needs_quotes = field.find_first_of(",\"\r\n") != std::string_view::npos;
    if (!needs_quotes) return std::string(field);
    std::string out = "\"";
    for (char c : field) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
    return out;
}

// RFC 4180: CRLF record separators
void write_csv(const std::filesystem::path& path, const std::vector<std::string>& header,
               const std::vector<std::vector<std::string>>& rows) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot write " + path.string());
    auto write_row = [&out](const std::vector<std::string>& fields) {
        for (std::size_t i = 0; i < fields.size(); ++i) {
            if (i) out << ',';
            out << csv_escape(fields[i]);
        }
        out << "\r\n";
    };
    write_row(header);
    for (const auto& row : rows) write_row(row);
}

void write_text(const std::filesystem::path& path, std::string_view content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot write " + path.string());
    out << content;
}

void reject_unknown_keys(const nlohmann::json& obj, const std::set<std::string>& allowed,
                         const std::string& where) {
    for (const auto& [key, value] : obj.items()) {
        if (!allowed.contains(key)) throw ConfigError("unknown key '" + key + "' in " + where);
    }
}

std::filesystem::path resolve(const std::filesystem::path& base, std::string_view entry) {
    std::filesystem::path p{std::string(entry)};
    return p.is_relative() ? base / p : p;
}

void require_exists(const std::filesystem::path& p, const char* role) {
    if (!std::filesystem::exists(p))
        throw ConfigError(std::string(role) + " file does not exist: " + p.string());
}

struct LoadedConstellation {
    std::filesystem::path file;
    ConstellationSpec spec;
    std::vector<SatelliteGroup> groups;
    std::size_t total = 0;
};

std::vector<LoadedConstellation> load_constellations(const RunConfig& config) {
    std::vector<LoadedConstellation> out;
    for (const auto& file : config.constellation_files) {
        LoadedConstellation c;
        c.file = file;
        c.spec = load_constellation_spec(file);
        c.groups = build_constellation_grouped(c.spec, config.mission.epoch);
        for (const auto& g : c.groups) c.total += g.satellites.size();
        if (c.total == 0)
            throw ConfigError("constellation '" + c.spec.name + "' is empty");
        out.push_back(std::move(c));
    }
    return out;
}

std::vector<GroundStation> load_and_override(const std::filesystem::path& file,
                                             const RunConfig& config) {
    auto stations = load_stations_file(file);
    if (config.min_elevation_override_deg) {
        for (auto& st : stations) st.min_elevation_deg = *config.min_elevation_override_deg;
    }
    return stations;
}

nlohmann::json input_entry(const std::filesystem::path& path) {
    return {{"path", path.string()}, {"fnv1a64", fnv1a64_hex(read_file(path))}};
}

nlohmann::json manifest_base(const RunConfig& config, const char* subcommand) {
    nlohmann::json m;
    m["tool"] = {{"name", "satpass"}, {"version", std::string(SATPASS_VERSION)}};
    m["subcommand"] = subcommand;
    m["mission"] = {{"epoch_jd_utc", config.mission.epoch.julian_date_utc()},
                    {"duration_s", config.mission.duration_s},
                    {"sample_step_s", config.mission.sample_step_s},
                    {"refine_tolerance_s", config.mission.refine_tolerance_s}};
    m["overrides"]["min_elevation_deg"] =
        config.min_elevation_override_deg ? nlohmann::json(*config.min_elevation_override_deg)
                                          : nlohmann::json(nullptr);
    m["inputs"]["config"] = input_entry(config.config_path);
    m["inputs"]["stations"] = input_entry(config.stations_file);
    nlohmann::json constellations = nlohmann::json::array();
    for (const auto& file : config.constellation_files) {
        nlohmann::json entry = input_entry(file);
        const auto spec = load_constellation_spec(file);
        entry["name"] = spec.name;
        entry["tle_retrieved"] =
            spec.tle_retrieved ? nlohmann::json(*spec.tle_retrieved) : nlohmann::json(nullptr);
        if (spec.tle_source) entry["tle_file"] = input_entry(*spec.tle_source);
        constellations.push_back(std::move(entry));
    }
    m["inputs"]["constellations"] = std::move(constellations);
    return m;
}

void finish_manifest(nlohmann::json manifest, const std::filesystem::path& out_dir,
                     const std::string& name, ReportResult& result) {
    nlohmann::json outputs = nlohmann::json::array();
    for (const auto& f : result.files_written) outputs.push_back(f.filename().string());
    manifest["outputs"] = std::move(outputs);
    const auto path = out_dir / name;
    write_text(path, manifest.dump(2) + "\n");
    result.files_written.push_back(path);
}

}  // namespace

RunConfig load_run_config(const std::filesystem::path& file) {
    require_exists(file, "config");
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(read_file(file));
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError("invalid JSON in " + file.string() + ": " + e.what());
    }

    const std::filesystem::path base = file.parent_path();
    RunConfig config;
    config.config_path = file;
    try {
        reject_unknown_keys(j, {"mission", "constellations", "stations_file",
                                "network_stations_file", "network_sizes", "link_rate_bps",
                                "conjunction"}, file.string());

        const auto& mission = j.at("mission");
        reject_unknown_keys(mission, {"epoch_utc", "duration_s", "sample_step_s",
                                      "refine_tolerance_s"}, "mission");
        config.mission.epoch = timestamp_from_iso8601(mission.at("epoch_utc").get<std::string>());
        config.mission.duration_s = mission.value("duration_s", 86400.0);
        config.mission.sample_step_s = mission.value("sample_step_s", 10.0);
        config.mission.refine_tolerance_s = mission.value("refine_tolerance_s", 0.01);

        for (const auto& entry : j.at("constellations"))
            config.constellation_files.push_back(resolve(base, entry.get<std::string>()));
        if (config.constellation_files.empty())
            throw ConfigError("config needs at least one constellation");

        config.stations_file = resolve(base, j.at("stations_file").get<std::string>());

        if (j.contains("network_stations_file"))
            config.network_stations_file =
                resolve(base, j.at("network_stations_file").get<std::string>());
        if (j.contains("network_sizes")) {
            for (const auto& n : j.at("network_sizes"))
                config.network_sizes.push_back(n.get<int>());
        }
        if (j.contains("link_rate_bps")) {
            config.link_rate_bps = j.at("link_rate_bps").get<double>();
            if (*config.link_rate_bps < 0.0) throw ConfigError("link_rate_bps must be >= 0");
        }
        if (j.contains("conjunction")) {
            const auto& c = j.at("conjunction");
            reject_unknown_keys(c, {"threshold_km", "coarse_step_s"}, "conjunction");
            ConjunctionSettings settings;
            settings.threshold_km = c.at("threshold_km").get<double>();
            settings.coarse_step_s = c.value("coarse_step_s", 30.0);
            if (!(settings.threshold_km >= 0.0)) throw ConfigError("threshold_km must be >= 0");
            if (!(settings.coarse_step_s > 0.0)) throw ConfigError("coarse_step_s must be > 0");
            config.conjunction = settings;
        }
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError("invalid config " + file.string() + ": " + e.what());
    }

    try {
        config.mission.validate();
    } catch (const std::invalid_argument& e) {
        throw ConfigError("invalid mission config in " + file.string() + ": " + e.what());
    }

    require_exists(config.stations_file, "stations");
    for (const auto& f : config.constellation_files) require_exists(f, "constellation");
    if (config.network_stations_file) require_exists(*config.network_stations_file, "network stations");
    return config;
}

ReportResult run_access_analysis(const RunConfig& config, const std::filesystem::path& out_dir) {
    const auto stations = load_and_override(config.stations_file, config);
    if (stations.empty()) throw ConfigError("stations file has no stations");
    const auto constellations = load_constellations(config);

    std::filesystem::create_directories(out_dir);

    std::vector<std::vector<std::string>> rows;
    std::vector<std::vector<std::string>> shell_rows;
    bool any_multi_shell = false;

    double max_ta = 0.0;
    std::string max_ta_where;

    for (const auto& station : stations) {
        for (const auto& constellation : constellations) {
            std::vector<AccessMetrics> shell_metrics;
            for (const auto& group : constellation.groups) {
                const auto windows = compute_constellation_windows(
                    station, group.satellites, config.mission, config.threads);
                shell_metrics.push_back(constellation_metrics(
                    station.name, constellation.spec.name, windows, group.satellites.size(),
                    config.mission));
                const auto& m = shell_metrics.back();
                shell_rows.push_back({station.name, constellation.spec.name, group.label,
                                      std::to_string(group.satellites.size()),
                                      format_fraction(m.accessible_ratio),
                                      format_seconds(m.mean_access_time_s),
                                      format_fraction(m.gamma)});
            }
            if (constellation.groups.size() > 1) any_multi_shell = true;

            // constellation row: unweighted mean over shells, gamma recomputed
            double ratio = 0.0, ta = 0.0;
            for (const auto& m : shell_metrics) {
                ratio += m.accessible_ratio;
                ta += m.mean_access_time_s;
            }
            ratio /= static_cast<double>(shell_metrics.size());
            ta /= static_cast<double>(shell_metrics.size());
            const double gamma = ta / config.mission.duration_s;

            rows.push_back({station.name, constellation.spec.name,
                            std::to_string(constellation.total), format_fraction(ratio),
                            format_seconds(ta), format_fraction(gamma)});
            if (ta > max_ta) {
                max_ta = ta;
                max_ta_where = station.name + "/" + constellation.spec.name;
            }
        }
    }

    ReportResult result;
    const auto table_path = out_dir / "access_table.csv";
    write_csv(table_path,
              {"station", "constellation", "total_satellites", "accessible_ratio", "Ta_s", "gamma"},
              rows);
    result.files_written.push_back(table_path);

    if (any_multi_shell) {
        const auto shell_path = out_dir / "access_table_by_shell.csv";
        write_csv(shell_path,
                  {"station", "constellation", "shell", "total_satellites", "accessible_ratio",
                   "Ta_s", "gamma"},
                  shell_rows);
        result.files_written.push_back(shell_path);
    }

    result.summary_lines.push_back(
        "access: " + std::to_string(rows.size()) + " rows (" + std::to_string(stations.size()) +
        " stations x " + std::to_string(constellations.size()) + " constellations)");
    if (config.link_rate_bps) {
        const double bits = data_volume_bound_bits(max_ta, *config.link_rate_bps);
        result.summary_lines.push_back(
            "data volume bound: max T_a " + format_seconds(max_ta) + " s (" + max_ta_where +
            ") x " + format_fraction(*config.link_rate_bps) + " bit/s = " +
            format_fraction(bits) + " bits");
    }

    nlohmann::json manifest = manifest_base(config, "access");
    manifest["link_rate_bps"] =
        config.link_rate_bps ? nlohmann::json(*config.link_rate_bps) : nlohmann::json(nullptr);
    finish_manifest(std::move(manifest), out_dir, "access_manifest.json", result);
    return result;
}

ReportResult run_network_analysis(const RunConfig& config, const std::filesystem::path& out_dir) {
    if (!config.network_stations_file)
        throw ConfigError("network analysis requires network_stations_file in the config");
    const auto network = load_and_override(*config.network_stations_file, config);
    if (network.empty()) throw ConfigError("network stations file has no stations");

    std::vector<int> sizes = config.network_sizes;
    if (sizes.empty()) sizes.push_back(static_cast<int>(network.size()));
    for (int n : sizes) {
        if (n < 1 || n > static_cast<int>(network.size()))
            throw ConfigError("network size " + std::to_string(n) + " out of [1, " +
                              std::to_string(network.size()) + "]");
    }
    const int max_size = *std::max_element(sizes.begin(), sizes.end());

    const auto constellations = load_constellations(config);
    std::filesystem::create_directories(out_dir);

    std::vector<std::vector<std::string>> rows;
    for (const auto& constellation : constellations) {
        std::vector<Satellite> satellites;
        for (const auto& group : constellation.groups)
            satellites.insert(satellites.end(), group.satellites.begin(), group.satellites.end());

        // windows once per (station, satellite); prefix unions per size
        const std::size_t n_sats = satellites.size();
        std::vector<std::vector<std::vector<std::pair<double, double>>>> intervals(
            static_cast<std::size_t>(max_size),
            std::vector<std::vector<std::pair<double, double>>>(n_sats));
        detail::parallel_for(static_cast<std::size_t>(max_size) * n_sats, config.threads,
                             [&](std::size_t idx) {
                                 const std::size_t st = idx / n_sats;
                                 const std::size_t sat = idx % n_sats;
                                 for (const auto& w : compute_windows(
                                          network[st], satellites[sat].elements, config.mission))
                                     intervals[st][sat].emplace_back(w.t_rise_s, w.t_set_s);
                             });

        for (int size : sizes) {
            double sum = 0.0;
            for (std::size_t sat = 0; sat < n_sats; ++sat) {
                std::vector<std::pair<double, double>> merged;
                for (int st = 0; st < size; ++st)
                    merged.insert(merged.end(), intervals[st][sat].begin(),
                                  intervals[st][sat].end());
                sum += union_duration(std::move(merged)) / config.mission.duration_s;
            }
            rows.push_back({constellation.spec.name, std::to_string(size),
                            format_fraction(sum / static_cast<double>(n_sats))});
        }
    }

    ReportResult result;
    const auto path = out_dir / "network_ratio.csv";
    write_csv(path, {"constellation", "n_stations", "per_satellite_access_ratio"}, rows);
    result.files_written.push_back(path);
    result.summary_lines.push_back("network: " + std::to_string(rows.size()) + " rows over " +
                                   std::to_string(network.size()) + " stations");

    nlohmann::json manifest = manifest_base(config, "network");
    manifest["inputs"]["network_stations"] = input_entry(*config.network_stations_file);
    manifest["network_sizes"] = sizes;
    finish_manifest(std::move(manifest), out_dir, "network_manifest.json", result);
    return result;
}

ReportResult run_conjunction_screen(const RunConfig& config, const std::filesystem::path& out_dir) {
    if (!config.conjunction)
        throw ConfigError("conjunction screening requires a conjunction section in the config");

    const auto constellations = load_constellations(config);
    std::vector<Satellite> satellites;
    for (const auto& constellation : constellations)
        for (const auto& group : constellation.groups)
            satellites.insert(satellites.end(), group.satellites.begin(), group.satellites.end());
    if (satellites.size() < 2)
        throw ConfigError("conjunction screening needs at least two satellites");

    ScreenOptions options;
    options.threshold_km = config.conjunction->threshold_km;
    options.coarse_step_s = config.conjunction->coarse_step_s;
    options.threads = config.threads;
    const auto events = screen_constellation(satellites, config.mission, options);

    std::filesystem::create_directories(out_dir);
    std::vector<std::vector<std::string>> rows;
    for (const auto& e : events) {
        rows.push_back({e.satellite_a, e.satellite_b,
                        format_seconds(e.time_of_closest_approach_s),
                        format_fraction(e.miss_distance_km)});
    }

    ReportResult result;
    const auto path = out_dir / "conjunction_events.csv";
    write_csv(path, {"sat_a", "sat_b", "tca_s", "miss_km"}, rows);
    result.files_written.push_back(path);

    const std::size_t pairs = satellites.size() * (satellites.size() - 1) / 2;
    result.summary_lines.push_back(std::to_string(pairs) + " pairs screened, " +
                                   std::to_string(events.size()) + " events reported");

    nlohmann::json manifest = manifest_base(config, "conjunction");
    manifest["conjunction"] = {{"threshold_km", config.conjunction->threshold_km},
                               {"coarse_step_s", config.conjunction->coarse_step_s}};
    finish_manifest(std::move(manifest), out_dir, "conjunction_manifest.json", result);
    return result;
}

}  // namespace satpass
