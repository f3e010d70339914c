#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "satpass/orbit.hpp"
#include "satpass/time.hpp"

namespace satpass {

enum class WalkerPattern {
    Star,   // RAANs spread over 180 degrees
    Delta,  // RAANs spread over 360 degrees
};

/// One Walker i:t/p/f shell of circular orbits.
struct WalkerShell {
    WalkerPattern pattern = WalkerPattern::Delta;
    int total_satellites = 0;   // t
    int planes = 0;             // p, must divide t
    int phasing = 0;            // f in [0, p)
    double inclination_deg = 0.0;
    double altitude_km = 0.0;
    double raan_offset_deg = 0.0;

    void validate() const;
    int satellites_per_plane() const { return total_satellites / planes; }
};

/// Either a list of synthetic shells or a TLE file, never both.
struct ConstellationSpec {
    std::string name;
    std::vector<WalkerShell> shells;
    std::optional<std::filesystem::path> tle_source;
    std::optional<std::string> tle_retrieved;  // snapshot date, carried into run manifests

    void validate() const;
};

/// Satellites of one shell, plane-major. Satellite j of plane k sits at
/// RAAN = raan_offset + k*spread/p and mean anomaly
/// M = j*360/s + k*f*360/t (s = t/p satellites per plane), e = 0, argp = 0.
std::vector<OrbitalElements> generate_walker(const WalkerShell& shell, const Timestamp& epoch);

/// One satellite group per shell (label "shell<k>"), or a single "tle"
/// group for TLE-sourced constellations. Ids follow
/// <name>/<shell>/<plane>/<slot>, or <name>/<catalog> for TLE sources.
struct SatelliteGroup {
    std::string label;
    std::vector<Satellite> satellites;
};

std::vector<SatelliteGroup> build_constellation_grouped(const ConstellationSpec& spec,
                                                        const Timestamp& epoch);

/// Flat concatenation of the grouped form.
std::vector<Satellite> build_constellation(const ConstellationSpec& spec, const Timestamp& epoch);

/// Reads a constellation spec from JSON. Unknown keys are rejected.
ConstellationSpec load_constellation_spec(const std::filesystem::path& file);

}  // namespace satpass
