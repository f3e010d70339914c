#include "satpass/tle.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <stdexcept>

#include "satpass/constants.hpp"
#include "satpass/errors.hpp"

namespace satpass {

namespace {

constexpr std::size_t TLE_LINE_LENGTH = 69;

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
    return s;
}

[[noreturn]] void fail(int line_number, const std::string& what) {
    throw ParseError("line " + std::to_string(line_number) + ": " + what);
}

double parse_double_field(std::string_view field, int line_number, const char* name) {
    const std::string text(trim(field));
    if (text.empty()) fail(line_number, std::string("empty ") + name + " field");
    char* end = nullptr;
    const double value = std::strtod(text.c_str(), &end);
    if (end != text.c_str() + text.size() || !std::isfinite(value))
        fail(line_number, std::string("malformed ") + name + " field '" + text + "'");
    return value;
}

long parse_int_field(std::string_view field, int line_number, const char* name,
                     bool allow_blank = false) {
    const std::string text(trim(field));
    if (text.empty()) {
        if (allow_blank) return 0;
        fail(line_number, std::string("empty ") + name + " field");
    }
    char* end = nullptr;
    const long value = std::strtol(text.c_str(), &end, 10);
    if (end != text.c_str() + text.size())
        fail(line_number, std::string("malformed ") + name + " field '" + text + "'");
    return value;
}

// "±DDDDD±D" fields: value = ±0.DDDDD * 10^(±D). Blank means zero.
double parse_exponent_field(std::string_view field, int line_number, const char* name) {
    if (trim(field).empty()) return 0.0;
    if (field.size() != 8) fail(line_number, std::string("malformed ") + name + " field width");
    const double sign = field[0] == '-' ? -1.0 : 1.0;
    const long mantissa = parse_int_field(field.substr(1, 5), line_number, name);
    const char exp_sign = field[6];
    if (exp_sign != '+' && exp_sign != '-' && exp_sign != ' ')
        fail(line_number, std::string("malformed ") + name + " exponent sign");
    const long exp_digit = parse_int_field(field.substr(7, 1), line_number, name, true);
    const long exponent = (exp_sign == '-' ? -exp_digit : exp_digit) - 5;
    return sign * static_cast<double>(mantissa) * std::pow(10.0, static_cast<double>(exponent));
}

std::string_view checked_line(std::string_view line, int line_number, char expected_first) {
    if (line.size() != TLE_LINE_LENGTH)
        fail(line_number, "expected 69 columns, got " + std::to_string(line.size()));
    if (line[0] != expected_first)
        fail(line_number, std::string("expected line to start with '") + expected_first + "'");
    const int computed = tle_checksum(line);
    const char last = line[68];
    if (last < '0' || last > '9') fail(line_number, "checksum column is not a digit");
    if (computed != last - '0')
        fail(line_number, "checksum mismatch (line ends with " + std::string(1, last) +
                              ", digits sum to " + std::to_string(computed) + ")");
    return line;
}

TleRecord parse_record(std::string_view name, std::string_view line1, int line1_number,
                       std::string_view line2, int line2_number) {
    checked_line(line1, line1_number, '1');
    checked_line(line2, line2_number, '2');

    TleRecord rec;
    rec.name = std::string(trim(name));
    rec.catalog_number = static_cast<int>(parse_int_field(line1.substr(2, 5), line1_number, "catalog number"));
    rec.classification = line1[7];
    rec.intl_designator = std::string(trim(line1.substr(9, 8)));

    const int yy = static_cast<int>(parse_int_field(line1.substr(18, 2), line1_number, "epoch year"));
    rec.epoch_year = yy >= 57 ? 1900 + yy : 2000 + yy;
    rec.epoch_day = parse_double_field(line1.substr(20, 12), line1_number, "epoch day");
    if (rec.epoch_day < 1.0 || rec.epoch_day >= 367.0)
        fail(line1_number, "epoch day of year out of range");

    rec.mean_motion_dot = parse_double_field(line1.substr(33, 10), line1_number, "mean motion derivative");
    rec.mean_motion_ddot = parse_exponent_field(line1.substr(44, 8), line1_number, "second derivative");
    rec.bstar = parse_exponent_field(line1.substr(53, 8), line1_number, "B*");
    rec.ephemeris_type = static_cast<int>(parse_int_field(line1.substr(62, 1), line1_number, "ephemeris type", true));
    rec.element_set_number = static_cast<int>(parse_int_field(line1.substr(64, 4), line1_number, "element set number", true));

    const int catalog2 = static_cast<int>(parse_int_field(line2.substr(2, 5), line2_number, "catalog number"));
    if (catalog2 != rec.catalog_number)
        fail(line2_number, "catalog number " + std::to_string(catalog2) +
                               " does not match line 1 (" + std::to_string(rec.catalog_number) + ")");

    rec.inclination_deg = parse_double_field(line2.substr(8, 8), line2_number, "inclination");
    rec.raan_deg = parse_double_field(line2.substr(17, 8), line2_number, "RAAN");
    // implied decimal point: "0001234" -> 0.0001234
    rec.eccentricity = static_cast<double>(parse_int_field(line2.substr(26, 7), line2_number, "eccentricity")) * 1e-7;
    rec.arg_perigee_deg = parse_double_field(line2.substr(34, 8), line2_number, "argument of perigee");
    rec.mean_anomaly_deg = parse_double_field(line2.substr(43, 8), line2_number, "mean anomaly");
    rec.mean_motion_rev_day = parse_double_field(line2.substr(52, 11), line2_number, "mean motion");
    rec.rev_number_at_epoch = static_cast<int>(parse_int_field(line2.substr(63, 5), line2_number, "rev number", true));

    if (rec.inclination_deg < 0.0 || rec.inclination_deg > 180.0)
        fail(line2_number, "inclination out of [0, 180] degrees");
    if (!(rec.mean_motion_rev_day > 0.0))
        fail(line2_number, "mean motion must be positive");
    return rec;
}

// "±0.ddddd e±e" -> "±DDDDD±D"
std::string format_exponent_field(double value) {
    if (value == 0.0) return " 00000-0";
    const char sign = value < 0.0 ? '-' : ' ';
    const double av = std::abs(value);
    int exponent = static_cast<int>(std::floor(std::log10(av))) + 1;
    long mantissa = std::lround(av * std::pow(10.0, static_cast<double>(5 - exponent)));
    if (mantissa >= 100000) {  // rounding carried into a new decade
        mantissa /= 10;
        ++exponent;
    }
    if (exponent < -9 || exponent > 9)
        throw std::invalid_argument("value out of range for TLE exponent field");
    char buf[16];
    std::snprintf(buf, sizeof buf, "%c%05d%c%d", sign, static_cast<int>(mantissa),
                  exponent < 0 ? '-' : '+', std::abs(exponent));
    return buf;
}

}  // namespace

int tle_checksum(std::string_view line) {
    int sum = 0;
    const std::size_t n = std::min<std::size_t>(line.size(), TLE_LINE_LENGTH - 1);
    for (std::size_t i = 0; i < n; ++i) {
        const char c = line[i];
        if (c >= '0' && c <= '9') sum += c - '0';
        else if (c == '-') sum += 1;
    }
    return sum % 10;
}

Timestamp TleRecord::epoch() const {
    const int yy = epoch_year % 100;
    return timestamp_from_jd(julian_date_from_tle_epoch(yy, epoch_day));
}

TleParseResult parse_tle_file(std::string_view content, TleParseMode mode) {
    // Split keeping 1-based line numbers; CRLF tolerated.
    std::vector<std::pair<int, std::string_view>> lines;
    int number = 1;
    for (std::size_t pos = 0; pos <= content.size(); ++number) {
        std::size_t eol = content.find('\n', pos);
        if (eol == std::string_view::npos) eol = content.size();
        std::string_view raw = content.substr(pos, eol - pos);
        while (!raw.empty() && (raw.back() == '\r' || raw.back() == ' ')) raw.remove_suffix(1);
        if (!raw.empty()) lines.emplace_back(number, raw);
        pos = eol + 1;
        if (eol == content.size()) break;
    }

    TleParseResult result;
    std::string_view pending_name;
    std::size_t i = 0;
    while (i < lines.size()) {
        const auto [line_no, line] = lines[i];
        const bool looks_like_line1 = line.size() >= 2 && line[0] == '1' && line[1] == ' ';
        try {
            if (looks_like_line1) {
                if (i + 1 >= lines.size())
                    fail(line_no, "line 1 at end of file without a matching line 2");
                const auto [line2_no, line2] = lines[i + 1];
                result.records.push_back(parse_record(pending_name, line, line_no, line2, line2_no));
                pending_name = {};
                i += 2;
            } else if (line.size() >= 2 && line[0] == '2' && line[1] == ' ') {
                fail(line_no, "line 2 without a preceding line 1");
            } else {
                if (!pending_name.empty())
                    fail(line_no, "two consecutive name lines");
                pending_name = line;
                ++i;
            }
        } catch (const ParseError& err) {
            if (mode == TleParseMode::Strict) throw;
            ++result.skipped;
            result.errors.emplace_back(err.what());
            pending_name = {};
            i += looks_like_line1 ? 2 : 1;  // resync past the offending record
        }
    }
    if (!pending_name.empty()) {
        if (mode == TleParseMode::Strict)
            fail(lines.back().first, "name line at end of file without an element set");
        ++result.skipped;
        result.errors.emplace_back("trailing name line without an element set");
    }
    return result;
}

std::string serialize_tle_record(const TleRecord& record) {
    char ndot[24];
    const double nd = record.mean_motion_dot;
    const long nd_digits = std::lround(std::abs(nd) * 1e8);
    if (nd_digits >= 100000000L)
        throw std::invalid_argument("mean motion derivative out of range for TLE field");
    std::snprintf(ndot, sizeof ndot, "%c.%08ld", nd < 0.0 ? '-' : ' ', nd_digits);

    char line1[160];
    std::snprintf(line1, sizeof line1, "1 %05d%c %-8s %02d%012.8f %s %s %s %d %4d",
                  record.catalog_number, record.classification, record.intl_designator.c_str(),
                  record.epoch_year % 100, record.epoch_day, ndot,
                  format_exponent_field(record.mean_motion_ddot).c_str(),
                  format_exponent_field(record.bstar).c_str(), record.ephemeris_type,
                  record.element_set_number);

    char line2[160];
    std::snprintf(line2, sizeof line2, "2 %05d %8.4f %8.4f %07ld %8.4f %8.4f %11.8f%5d",
                  record.catalog_number, record.inclination_deg, record.raan_deg,
                  std::lround(record.eccentricity * 1e7), record.arg_perigee_deg,
                  record.mean_anomaly_deg, record.mean_motion_rev_day,
                  record.rev_number_at_epoch);

    if (std::string_view(line1).size() != 68 || std::string_view(line2).size() != 68)
        throw std::invalid_argument("record fields do not fit the fixed-width TLE layout");

    std::string out;
    if (!record.name.empty()) {
        out += record.name;
        out += '\n';
    }
    out += line1;
    out += std::to_string(tle_checksum(line1));
    out += '\n';
    out += line2;
    out += std::to_string(tle_checksum(line2));
    out += '\n';
    return out;
}

OrbitalElements tle_to_elements(const TleRecord& record) {
    const double n_rad_s = record.mean_motion_rev_day * TWO_PI / SECONDS_PER_DAY;
    const double a = std::cbrt(MU_EARTH / (n_rad_s * n_rad_s));
    if (a <= EARTH_EQUATORIAL_RADIUS)
        throw std::invalid_argument("catalog " + std::to_string(record.catalog_number) +
                                    ": mean motion implies a decayed orbit (a = " +
                                    std::to_string(a) + " km)");
    OrbitalElements el;
    el.semi_major_axis_km = a;
    el.eccentricity = record.eccentricity;
    el.inclination_rad = deg_to_rad(record.inclination_deg);
    el.raan_rad = wrap_two_pi(deg_to_rad(record.raan_deg));
    el.arg_perigee_rad = wrap_two_pi(deg_to_rad(record.arg_perigee_deg));
    el.mean_anomaly_rad = wrap_two_pi(deg_to_rad(record.mean_anomaly_deg));
    el.epoch = record.epoch();
    el.validate();
    return el;
}

}  // namespace satpass
