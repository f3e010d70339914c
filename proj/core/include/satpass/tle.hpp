#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "satpass/orbit.hpp"
#include "satpass/time.hpp"

namespace satpass {

/// One two-line element set, with the optional name line. All angle fields
/// keep the degree units of the file; SGP4-only fields (derivatives, B*)
/// are parsed and validated but never consumed by propagation.
struct TleRecord {
    std::string name;              // empty when the set had no name line
    int catalog_number = 0;
    char classification = 'U';
    std::string intl_designator;   // trimmed
    int epoch_year = 2000;         // four-digit
    double epoch_day = 1.0;        // fractional day of year, 1-based
    double mean_motion_dot = 0.0;  // rev/day^2 (field value, i.e. ndot/2)
    double mean_motion_ddot = 0.0; // rev/day^3 (field value, i.e. nddot/6)
    double bstar = 0.0;            // 1/earth radii
    int ephemeris_type = 0;
    int element_set_number = 0;
    double inclination_deg = 0.0;
    double raan_deg = 0.0;
    double eccentricity = 0.0;
    double arg_perigee_deg = 0.0;
    double mean_anomaly_deg = 0.0;
    double mean_motion_rev_day = 0.0;
    int rev_number_at_epoch = 0;

    Timestamp epoch() const;

    bool operator==(const TleRecord&) const = default;
};

enum class TleParseMode {
    Strict,   // first malformed record aborts the whole file
    Lenient,  // malformed records are skipped and counted
};

struct TleParseResult {
    std::vector<TleRecord> records;
    int skipped = 0;                   // lenient mode only
    std::vector<std::string> errors;   // one message per skipped record
};

/// Mod-10 checksum of the first 68 columns; digits count their value,
/// minus signs count 1, everything else 0.
int tle_checksum(std::string_view line);

/// Parses a sequence of 2-line or named 3-line element sets. Strict mode
/// throws ParseError (with the offending line number) on the first bad
/// record; lenient mode skips it and keeps going.
TleParseResult parse_tle_file(std::string_view content,
                              TleParseMode mode = TleParseMode::Strict);

/// Renders a record back to the fixed-width format (name line included
/// when present), regenerating both checksums.
std::string serialize_tle_record(const TleRecord& record);

/// Mean elements for the analytic propagator: a = (mu/n^2)^(1/3) from the
/// mean motion, angles to radians. Throws std::invalid_argument when the
/// implied orbit has decayed (a at or below the equatorial radius).
OrbitalElements tle_to_elements(const TleRecord& record);

}  // namespace satpass
