#pragma once

#include "satpass/constants.hpp"
#include "satpass/orbit.hpp"
#include "satpass/time.hpp"
#include "satpass/vec3.hpp"

namespace satpass {

/// Reference ellipsoid. The flattening is a parameter so the spherical
/// limit (equal radii) can be exercised directly.
struct Ellipsoid {
    double equatorial_radius_km = EARTH_EQUATORIAL_RADIUS;
    double polar_radius_km = EARTH_POLAR_RADIUS;

    constexpr double eccentricity_sq() const {
        const double ratio = polar_radius_km / equatorial_radius_km;
        return 1.0 - ratio * ratio;
    }
};

inline constexpr Ellipsoid WGS84{};

/// Greenwich Mean Sidereal Time (IAU 1982 polynomial, UT1 ~ UTC),
/// wrapped to [0, 2*pi).
double gmst_rad(const Timestamp& t);

/// Same polynomial without the wrap; strictly increasing with time.
double gmst_unwrapped_rad(const Timestamp& t);

/// Rotates an ECI position into the Earth-fixed frame: x_ecef = R3(theta) * x_eci.
Vec3 eci_to_ecef(const Vec3& position_eci_km, double gmst_angle_rad);
Vec3 eci_to_ecef(const StateVector& state);

/// Geodetic coordinates to ECEF via the prime-vertical radius of curvature.
Vec3 geodetic_to_ecef(double latitude_rad, double longitude_rad, double altitude_km,
                      const Ellipsoid& ellipsoid = WGS84);

}  // namespace satpass
