#include "satpass/frames.hpp"

#include <cmath>
#include <stdexcept>

namespace satpass {

double gmst_unwrapped_rad(const Timestamp& t) {
    const double d = t.days_since_j2000();   // UT1 ~ UTC
    const double tc = d / 36525.0;           // Julian centuries
    const double deg = 280.46061837 + 360.98564736629 * d +
                       0.000387933 * tc * tc - tc * tc * tc / 38710000.0;
    return deg_to_rad(deg);
}

double gmst_rad(const Timestamp& t) {
    return wrap_two_pi(gmst_unwrapped_rad(t));
}

Vec3 eci_to_ecef(const Vec3& position_eci_km, double gmst_angle_rad) {
    const double c = std::cos(gmst_angle_rad);
    const double s = std::sin(gmst_angle_rad);
    return {c * position_eci_km.x + s * position_eci_km.y,
            -s * position_eci_km.x + c * position_eci_km.y,
            position_eci_km.z};
}

Vec3 eci_to_ecef(const StateVector& state) {
    return eci_to_ecef(state.position_eci_km, gmst_rad(state.time));
}

Vec3 geodetic_to_ecef(double latitude_rad, double longitude_rad, double altitude_km,
                      const Ellipsoid& ellipsoid) {
    if (std::abs(latitude_rad) > PI / 2.0 + 1e-12)
        throw std::invalid_argument("latitude out of [-pi/2, pi/2]");
    const double sin_lat = std::sin(latitude_rad);
    const double cos_lat = std::cos(latitude_rad);
    const double e2 = ellipsoid.eccentricity_sq();
    // prime-vertical radius of curvature
    const double n = ellipsoid.equatorial_radius_km / std::sqrt(1.0 - e2 * sin_lat * sin_lat);
    return {(n + altitude_km) * cos_lat * std::cos(longitude_rad),
            (n + altitude_km) * cos_lat * std::sin(longitude_rad),
            (n * (1.0 - e2) + altitude_km) * sin_lat};
}

}  // namespace satpass
