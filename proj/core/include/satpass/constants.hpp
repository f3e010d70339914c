#pragma once

#include <cmath>
#include <numbers>

namespace satpass {

// WGS84 / EGM96 values, km and seconds throughout.
inline constexpr double MU_EARTH = 398600.4418;                // km^3/s^2
inline constexpr double EARTH_EQUATORIAL_RADIUS = 6378.137;    // km
inline constexpr double EARTH_POLAR_RADIUS = 6356.7523142;     // km
inline constexpr double J2 = 1.08262668e-3;
inline constexpr double EARTH_ROTATION_RATE = 7.2921159e-5;    // rad/s

inline constexpr double TWO_PI = 2.0 * std::numbers::pi;
inline constexpr double PI = std::numbers::pi;

constexpr double deg_to_rad(double deg) { return deg * PI / 180.0; }
constexpr double rad_to_deg(double rad) { return rad * 180.0 / PI; }

// Wraps an angle into [0, 2*pi).
inline double wrap_two_pi(double angle_rad) {
    double a = std::fmod(angle_rad, TWO_PI);
    if (a < 0.0) a += TWO_PI;
    // fmod can return exactly TWO_PI after the correction when angle is a
    // tiny negative number
    if (a >= TWO_PI) a -= TWO_PI;
    return a;
}

// Wraps a longitude in degrees into (-180, 180].
inline double wrap_longitude_deg(double lon_deg) {
    double l = std::fmod(lon_deg, 360.0);
    if (l <= -180.0) l += 360.0;
    if (l > 180.0) l -= 360.0;
    return l;
}

}  // namespace satpass
