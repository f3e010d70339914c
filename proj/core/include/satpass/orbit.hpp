#pragma once

#include <string>

#include "satpass/constants.hpp"
#include "satpass/time.hpp"
#include "satpass/vec3.hpp"

namespace satpass {

/// Keplerian element set at an epoch. Angles in radians, normalized to
/// [0, 2*pi); lengths in km.
struct OrbitalElements {
    double semi_major_axis_km = 0.0;
    double eccentricity = 0.0;
    double inclination_rad = 0.0;
    double raan_rad = 0.0;
    double arg_perigee_rad = 0.0;
    double mean_anomaly_rad = 0.0;   // M0 at epoch
    Timestamp epoch;

    /// Throws std::invalid_argument when any type invariant is violated.
    void validate() const;

    double perigee_radius_km() const { return semi_major_axis_km * (1.0 - eccentricity); }
    double apogee_radius_km() const { return semi_major_axis_km * (1.0 + eccentricity); }
};

struct StateVector {
    Vec3 position_eci_km;
    Vec3 velocity_eci_km_s;
    Timestamp time;
};

struct Satellite {
    std::string id;
    OrbitalElements elements;
};

/// Mean motion n = sqrt(mu/a^3) in rad/s.
double mean_motion_rad_s(double semi_major_axis_km);

/// Orbital period 2*pi*sqrt(a^3/mu) in seconds.
double orbital_period_s(double semi_major_axis_km);

/// Solves Kepler's equation M = E - e*sin(E) by Newton-Raphson.
/// Initial guess E0 = M for e < 0.8, otherwise pi. Throws on the (for
/// e < 1 unreachable) iteration cap of 50.
double solve_kepler(double mean_anomaly_rad, double eccentricity, double tolerance = 1e-12);

/// Per-satellite propagation cache: mean motion and the J2 secular rates
/// are derived once, then states are analytic in the offset from the
/// element epoch. With `j2_enabled` the standard secular drifts are applied
/// to RAAN, argument of perigee and mean anomaly; a and e stay fixed (no
/// drag, no higher-order geopotential). The J2 coefficient is a parameter
/// so the secular path can be switched off exactly by passing zero.
class PreparedOrbit {
public:
    PreparedOrbit(const OrbitalElements& elements, bool j2_enabled, double j2_coefficient = J2);

    /// ECI state at `dt_s` seconds past the element epoch.
    StateVector state_at_offset(double dt_s) const;

    /// ECI position only; the hot path for sampling loops.
    Vec3 position_at_offset(double dt_s) const;

    const OrbitalElements& elements() const { return elements_; }
    double mean_motion() const { return mean_motion_; }
    double raan_rate() const { return raan_rate_; }
    double arg_perigee_rate() const { return arg_perigee_rate_; }
    double mean_anomaly_rate() const { return mean_anomaly_rate_; }

private:
    OrbitalElements elements_;
    double mean_motion_ = 0.0;       // rad/s, two-body
    double raan_rate_ = 0.0;         // rad/s
    double arg_perigee_rate_ = 0.0;  // rad/s
    double mean_anomaly_rate_ = 0.0; // rad/s, n plus the J2 correction
};

/// Two-body propagation with optional J2 secular rates; works forward and
/// backward from the element epoch.
StateVector propagate(const OrbitalElements& elements, const Timestamp& t,
                      bool j2_enabled, double j2_coefficient = J2);

}  // namespace satpass
