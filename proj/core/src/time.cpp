#include "satpass/time.hpp"

#include <cstdio>
#include <string>

#include "satpass/errors.hpp"

namespace satpass {

double julian_date_from_calendar(int year, int month, int day,
                                 int hour, int minute, double second) {
    // Fliegel-Van Flandern day number, valid for all Gregorian dates of
    // interest here. Integer divisions are intentional.
    const int a = (month - 14) / 12;
    const long jdn = (1461L * (year + 4800 + a)) / 4
                   + (367L * (month - 2 - 12 * a)) / 12
                   - (3L * ((year + 4900 + a) / 100)) / 4
                   + day - 32075;
    const double day_fraction = (hour * 3600.0 + minute * 60.0 + second) / SECONDS_PER_DAY;
    return static_cast<double>(jdn) - 0.5 + day_fraction;
}

Timestamp timestamp_from_iso8601(std::string_view text) {
    int y = 0, mo = 0, d = 0, h = 0, mi = 0;
    double s = 0.0;
    char tail = '\0';
    const std::string buf(text);
    const int n = std::sscanf(buf.c_str(), "%d-%d-%dT%d:%d:%lf%c", &y, &mo, &d, &h, &mi, &s, &tail);
    if (n != 7 || tail != 'Z')
        throw ParseError("invalid ISO-8601 UTC timestamp (expected YYYY-MM-DDThh:mm:ssZ): '" + buf + "'");
    if (mo < 1 || mo > 12 || d < 1 || d > 31 || h < 0 || h > 23 || mi < 0 || mi > 59 ||
        s < 0.0 || s >= 61.0)
        throw ParseError("ISO-8601 timestamp field out of range: '" + buf + "'");
    return timestamp_from_jd(julian_date_from_calendar(y, mo, d, h, mi, s));
}

double julian_date_from_tle_epoch(int two_digit_year, double day_of_year) {
    if (two_digit_year < 0 || two_digit_year > 99)
        throw ParseError("TLE epoch year out of range: " + std::to_string(two_digit_year));
    const int year = two_digit_year >= 57 ? 1900 + two_digit_year : 2000 + two_digit_year;
    // day_of_year is 1-based
    return julian_date_from_calendar(year, 1, 1) + (day_of_year - 1.0);
}

}  // namespace satpass
