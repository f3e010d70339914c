#include "satpass/walker.hpp"

#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "satpass/constants.hpp"
#include "satpass/errors.hpp"
#include "satpass/tle.hpp"

namespace satpass {

void WalkerShell::validate() const {
    if (total_satellites <= 0)
        throw std::invalid_argument("Walker shell needs a positive satellite count");
    if (planes <= 0 || total_satellites % planes != 0)
        throw std::invalid_argument("plane count " + std::to_string(planes) +
                                    " must divide the satellite count " +
                                    std::to_string(total_satellites));
    if (phasing < 0 || phasing >= planes)
        throw std::invalid_argument("phasing " + std::to_string(phasing) +
                                    " must lie in [0, planes)");
    if (!(altitude_km > 0.0))
        throw std::invalid_argument("shell altitude must be positive");
    if (inclination_deg < 0.0 || inclination_deg > 180.0)
        throw std::invalid_argument("inclination out of [0, 180] degrees");
}

void ConstellationSpec::validate() const {
    if (name.empty()) throw std::invalid_argument("constellation needs a name");
    const bool synthetic = !shells.empty();
    if (synthetic == tle_source.has_value())
        throw std::invalid_argument("constellation '" + name +
                                    "' must have exactly one of shells or a TLE source");
    for (const auto& shell : shells) shell.validate();
}

std::vector<OrbitalElements> generate_walker(const WalkerShell& shell, const Timestamp& epoch) {
    shell.validate();
    const int per_plane = shell.satellites_per_plane();
    const double spread_deg = shell.pattern == WalkerPattern::Star ? 180.0 : 360.0;
    const double plane_spacing = spread_deg / shell.planes;
    const double slot_spacing = 360.0 / per_plane;
    const double phase_step = shell.phasing * 360.0 / shell.total_satellites;

    std::vector<OrbitalElements> out;
    out.reserve(shell.total_satellites);
    for (int plane = 0; plane < shell.planes; ++plane) {
        const double raan_deg = shell.raan_offset_deg + plane * plane_spacing;
        for (int slot = 0; slot < per_plane; ++slot) {
            OrbitalElements el;
            el.semi_major_axis_km = EARTH_EQUATORIAL_RADIUS + shell.altitude_km;
            el.eccentricity = 0.0;
            el.inclination_rad = deg_to_rad(shell.inclination_deg);
            el.raan_rad = wrap_two_pi(deg_to_rad(raan_deg));
            el.arg_perigee_rad = 0.0;
            el.mean_anomaly_rad = wrap_two_pi(deg_to_rad(slot * slot_spacing + plane * phase_step));
            el.epoch = epoch;
            out.push_back(el);
        }
    }
    return out;
}

std::vector<SatelliteGroup> build_constellation_grouped(const ConstellationSpec& spec,
                                                        const Timestamp& epoch) {
    spec.validate();
    std::vector<SatelliteGroup> groups;

    if (spec.tle_source) {
        std::ifstream in(*spec.tle_source, std::ios::binary);
        if (!in) throw ConfigError("cannot open TLE file: " + spec.tle_source->string());
        std::stringstream buffer;
        buffer << in.rdbuf();
        const TleParseResult parsed = parse_tle_file(buffer.str(), TleParseMode::Strict);

        SatelliteGroup group;
        group.label = "tle";
        group.satellites.reserve(parsed.records.size());
        for (const TleRecord& rec : parsed.records) {
            group.satellites.push_back(
                {spec.name + "/" + std::to_string(rec.catalog_number), tle_to_elements(rec)});
        }
        groups.push_back(std::move(group));
        return groups;
    }

    for (std::size_t s = 0; s < spec.shells.size(); ++s) {
        const WalkerShell& shell = spec.shells[s];
        SatelliteGroup group;
        group.label = "shell" + std::to_string(s);
        const auto elements = generate_walker(shell, epoch);
        group.satellites.reserve(elements.size());
        const int per_plane = shell.satellites_per_plane();
        for (std::size_t k = 0; k < elements.size(); ++k) {
            const int plane = static_cast<int>(k) / per_plane;
            const int slot = static_cast<int>(k) % per_plane;
            group.satellites.push_back({spec.name + "/" + std::to_string(s) + "/" +
                                            std::to_string(plane) + "/" + std::to_string(slot),
                                        elements[k]});
        }
        groups.push_back(std::move(group));
    }
    return groups;
}

std::vector<Satellite> build_constellation(const ConstellationSpec& spec, const Timestamp& epoch) {
    std::vector<Satellite> all;
    for (auto& group : build_constellation_grouped(spec, epoch)) {
        all.insert(all.end(), std::make_move_iterator(group.satellites.begin()),
                   std::make_move_iterator(group.satellites.end()));
    }
    return all;
}

namespace {

void reject_unknown_keys(const nlohmann::json& obj, const std::set<std::string>& allowed,
                         const std::string& where) {
    for (const auto& [key, value] : obj.items()) {
        if (!allowed.contains(key))
            throw ConfigError("unknown key '" + key + "' in " + where);
    }
}

WalkerShell shell_from_json(const nlohmann::json& j, const std::string& where) {
    reject_unknown_keys(j, {"pattern", "total", "planes", "phasing", "inclination_deg",
                            "altitude_km", "raan_offset_deg"}, where);
    WalkerShell shell;
    const std::string pattern = j.at("pattern").get<std::string>();
    if (pattern == "star") shell.pattern = WalkerPattern::Star;
    else if (pattern == "delta") shell.pattern = WalkerPattern::Delta;
    else throw ConfigError("pattern must be 'star' or 'delta' in " + where);
    shell.total_satellites = j.at("total").get<int>();
    shell.planes = j.at("planes").get<int>();
    shell.phasing = j.at("phasing").get<int>();
    shell.inclination_deg = j.at("inclination_deg").get<double>();
    shell.altitude_km = j.at("altitude_km").get<double>();
    shell.raan_offset_deg = j.value("raan_offset_deg", 0.0);
    return shell;
}

}  // namespace

ConstellationSpec load_constellation_spec(const std::filesystem::path& file) {
    std::ifstream in(file, std::ios::binary);
    if (!in) throw ConfigError("cannot open constellation spec: " + file.string());

    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError("invalid JSON in " + file.string() + ": " + e.what());
    }

    try {
        reject_unknown_keys(j, {"name", "shells", "tle_file", "retrieved"}, file.string());
        ConstellationSpec spec;
        spec.name = j.at("name").get<std::string>();
        if (j.contains("shells")) {
            int index = 0;
            for (const auto& shell_json : j.at("shells")) {
                spec.shells.push_back(shell_from_json(
                    shell_json, file.string() + " shells[" + std::to_string(index) + "]"));
                ++index;
            }
        }
        if (j.contains("tle_file")) {
            // relative paths resolve against the spec file's directory
            std::filesystem::path tle(j.at("tle_file").get<std::string>());
            if (tle.is_relative()) tle = file.parent_path() / tle;
            spec.tle_source = tle;
        }
        if (j.contains("retrieved"))
            spec.tle_retrieved = j.at("retrieved").get<std::string>();
        spec.validate();
        return spec;
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError("invalid constellation spec " + file.string() + ": " + e.what());
    } catch (const std::invalid_argument& e) {
        throw ConfigError("invalid constellation spec " + file.string() + ": " + e.what());
    }
}

}  // namespace satpass
