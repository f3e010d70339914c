#include "satpass/orbit.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace satpass {

void OrbitalElements::validate() const {
    if (!(semi_major_axis_km > EARTH_EQUATORIAL_RADIUS))
        throw std::invalid_argument("semi-major axis " + std::to_string(semi_major_axis_km) +
                                    " km must exceed the equatorial radius");
    if (!(eccentricity >= 0.0 && eccentricity < 1.0))
        throw std::invalid_argument("eccentricity " + std::to_string(eccentricity) +
                                    " must lie in [0, 1)");
    if (!(inclination_rad >= 0.0 && inclination_rad <= PI))
        throw std::invalid_argument("inclination " + std::to_string(inclination_rad) +
                                    " rad must lie in [0, pi]");
    for (double angle : {raan_rad, arg_perigee_rad, mean_anomaly_rad}) {
        if (!(angle >= 0.0 && angle < TWO_PI) || !std::isfinite(angle))
            throw std::invalid_argument("orbital angle " + std::to_string(angle) +
                                        " rad must be normalized to [0, 2*pi)");
    }
}

double mean_motion_rad_s(double semi_major_axis_km) {
    return std::sqrt(MU_EARTH / (semi_major_axis_km * semi_major_axis_km * semi_major_axis_km));
}

double orbital_period_s(double semi_major_axis_km) {
    return TWO_PI / mean_motion_rad_s(semi_major_axis_km);
}

double solve_kepler(double mean_anomaly_rad, double eccentricity, double tolerance) {
    if (!(eccentricity >= 0.0 && eccentricity < 1.0))
        throw std::invalid_argument("solve_kepler requires 0 <= e < 1");
    if (!(tolerance > 0.0))
        throw std::invalid_argument("solve_kepler requires a positive tolerance");

    const double m = wrap_two_pi(mean_anomaly_rad);
    double e_anom = eccentricity < 0.8 ? m : PI;
    constexpr int max_iterations = 50;
    for (int i = 0; i < max_iterations; ++i) {
        const double f = e_anom - eccentricity * std::sin(e_anom) - m;
        if (std::abs(f) <= tolerance) return e_anom;
        e_anom -= f / (1.0 - eccentricity * std::cos(e_anom));
    }
    // Newton on M = E - e*sinE converges for every e < 1 from these starts;
    // reaching the cap means the inputs were not finite.
    throw std::runtime_error("Kepler solver failed to converge (M=" +
                             std::to_string(mean_anomaly_rad) + ", e=" +
                             std::to_string(eccentricity) + ")");
}

namespace {

// In-plane position/velocity plus the perifocal->ECI rotation at one instant.
struct OrbitGeometry {
    double x_pf, y_pf;     // km
    double vx_pf, vy_pf;   // km/s
    double r11, r12, r21, r22, r31, r32;
};

OrbitGeometry geometry_at(const OrbitalElements& el, double mean_anomaly,
                          double raan, double argp) {
    const double e = el.eccentricity;
    const double a = el.semi_major_axis_km;

    const double e_anom = solve_kepler(mean_anomaly, e);
    const double cos_e = std::cos(e_anom);
    const double sin_e = std::sin(e_anom);
    const double denom = 1.0 - e * cos_e;
    const double r = a * denom;
    const double cos_nu = (cos_e - e) / denom;
    const double sin_nu = std::sqrt(1.0 - e * e) * sin_e / denom;
    const double v_scale = std::sqrt(MU_EARTH / (a * (1.0 - e * e)));

    OrbitGeometry g;
    g.x_pf = r * cos_nu;
    g.y_pf = r * sin_nu;
    g.vx_pf = -v_scale * sin_nu;
    g.vy_pf = v_scale * (e + cos_nu);

    // rows of R3(-raan) * R1(-i) * R3(-argp)
    const double cos_o = std::cos(raan), sin_o = std::sin(raan);
    const double cos_w = std::cos(argp), sin_w = std::sin(argp);
    const double cos_i = std::cos(el.inclination_rad);
    const double sin_i = std::sin(el.inclination_rad);
    g.r11 = cos_o * cos_w - sin_o * sin_w * cos_i;
    g.r12 = -cos_o * sin_w - sin_o * cos_w * cos_i;
    g.r21 = sin_o * cos_w + cos_o * sin_w * cos_i;
    g.r22 = -sin_o * sin_w + cos_o * cos_w * cos_i;
    g.r31 = sin_w * sin_i;
    g.r32 = cos_w * sin_i;
    return g;
}

}  // namespace

PreparedOrbit::PreparedOrbit(const OrbitalElements& elements, bool j2_enabled,
                             double j2_coefficient)
    : elements_(elements) {
    elements_.validate();
    const double a = elements_.semi_major_axis_km;
    const double e = elements_.eccentricity;
    mean_motion_ = mean_motion_rad_s(a);
    mean_anomaly_rate_ = mean_motion_;
    if (j2_enabled) {
        const double p = a * (1.0 - e * e);            // semi-latus rectum
        const double re_p = EARTH_EQUATORIAL_RADIUS / p;
        const double k = 1.5 * j2_coefficient * re_p * re_p * mean_motion_;
        const double cos_i = std::cos(elements_.inclination_rad);
        raan_rate_ = -k * cos_i;
        arg_perigee_rate_ = 0.5 * k * (5.0 * cos_i * cos_i - 1.0);
        mean_anomaly_rate_ += 0.5 * k * std::sqrt(1.0 - e * e) * (3.0 * cos_i * cos_i - 1.0);
    }
}

Vec3 PreparedOrbit::position_at_offset(double dt_s) const {
    const double m = wrap_two_pi(elements_.mean_anomaly_rad + mean_anomaly_rate_ * dt_s);
    const OrbitGeometry g = geometry_at(elements_, m,
                                        elements_.raan_rad + raan_rate_ * dt_s,
                                        elements_.arg_perigee_rad + arg_perigee_rate_ * dt_s);
    return {g.r11 * g.x_pf + g.r12 * g.y_pf,
            g.r21 * g.x_pf + g.r22 * g.y_pf,
            g.r31 * g.x_pf + g.r32 * g.y_pf};
}

StateVector PreparedOrbit::state_at_offset(double dt_s) const {
    const double m = wrap_two_pi(elements_.mean_anomaly_rad + mean_anomaly_rate_ * dt_s);
    const OrbitGeometry g = geometry_at(elements_, m,
                                        elements_.raan_rad + raan_rate_ * dt_s,
                                        elements_.arg_perigee_rad + arg_perigee_rate_ * dt_s);
    StateVector state;
    state.position_eci_km = {g.r11 * g.x_pf + g.r12 * g.y_pf,
                             g.r21 * g.x_pf + g.r22 * g.y_pf,
                             g.r31 * g.x_pf + g.r32 * g.y_pf};
    state.velocity_eci_km_s = {g.r11 * g.vx_pf + g.r12 * g.vy_pf,
                               g.r21 * g.vx_pf + g.r22 * g.vy_pf,
                               g.r31 * g.vx_pf + g.r32 * g.vy_pf};
    state.time = elements_.epoch.plus_seconds(dt_s);
    return state;
}

StateVector propagate(const OrbitalElements& elements, const Timestamp& t,
                      bool j2_enabled, double j2_coefficient) {
    const PreparedOrbit orbit(elements, j2_enabled, j2_coefficient);
    return orbit.state_at_offset(t.seconds_since(elements.epoch));
}

}  // namespace satpass
