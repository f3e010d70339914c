#pragma once

#include <string_view>

namespace satpass {

inline constexpr double SECONDS_PER_DAY = 86400.0;
inline constexpr double JD_J2000 = 2451545.0;

/// A point on a continuous UTC-anchored time scale. `seconds_since_epoch`
/// counts from a mission epoch whose UTC instant is `epoch_jd_utc`; the
/// Julian date is always derived from the pair, so the two views stay
/// consistent by construction. UT1 is approximated by UTC (no leap-second
/// table), which moves LEO geometry by far less than the window tolerances
/// used downstream.
struct Timestamp {
    double epoch_jd_utc = JD_J2000;   // JD (UTC) of the instant seconds_since_epoch == 0
    double seconds_since_epoch = 0.0;

    double julian_date_utc() const { return epoch_jd_utc + seconds_since_epoch / SECONDS_PER_DAY; }

    // Evaluated without the large-magnitude JD subtraction so that GMST and
    // friends keep full precision close to the epoch.
    double days_since_j2000() const {
        return (epoch_jd_utc - JD_J2000) + seconds_since_epoch / SECONDS_PER_DAY;
    }

    Timestamp plus_seconds(double ds) const { return {epoch_jd_utc, seconds_since_epoch + ds}; }

    /// Elapsed seconds from `other` to this instant. Exact when both share
    /// the same epoch anchor; otherwise computed through Julian dates.
    double seconds_since(const Timestamp& other) const {
        if (epoch_jd_utc == other.epoch_jd_utc)
            return seconds_since_epoch - other.seconds_since_epoch;
        return (epoch_jd_utc - other.epoch_jd_utc) * SECONDS_PER_DAY +
               (seconds_since_epoch - other.seconds_since_epoch);
    }

    constexpr bool operator==(const Timestamp&) const = default;
};

inline Timestamp timestamp_from_jd(double jd_utc) { return {jd_utc, 0.0}; }

/// Julian date of a proleptic-Gregorian calendar instant (UTC).
double julian_date_from_calendar(int year, int month, int day,
                                 int hour = 0, int minute = 0, double second = 0.0);

/// Parses "YYYY-MM-DDThh:mm:ss[.fff]Z". Throws ParseError on anything else.
Timestamp timestamp_from_iso8601(std::string_view text);

/// TLE epoch (two-digit year + fractional day of year) to a Julian date.
/// Years 57-99 map to 19xx, 00-56 to 20xx.
double julian_date_from_tle_epoch(int two_digit_year, double day_of_year);

}  // namespace satpass
