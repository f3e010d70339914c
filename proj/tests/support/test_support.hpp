#pragma once

#include <atomic>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <unistd.h>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "satpass/access.hpp"
#include "satpass/frames.hpp"
#include "satpass/ground_station.hpp"
#include "satpass/orbit.hpp"

namespace satpass::test {

#ifndef SATPASS_DATA_DIR
#error "SATPASS_DATA_DIR must be defined by the build"
#endif

inline std::filesystem::path data_dir() { return std::filesystem::path(SATPASS_DATA_DIR); }

inline std::string read_file(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

/// Unique scratch directory, removed on destruction.
class TempDir {
public:
    explicit TempDir(const std::string& tag) {
        static std::atomic<int> counter{0};
        path_ = std::filesystem::temp_directory_path() /
                ("satpass_" + tag + "_" + std::to_string(counter.fetch_add(1)) + "_" +
                 std::to_string(::getpid()));
        std::filesystem::create_directories(path_);
    }
    ~TempDir() {
        std::error_code ec;
        std::filesystem::remove_all(path_, ec);
    }
    const std::filesystem::path& path() const { return path_; }

private:
    std::filesystem::path path_;
};

/// Fixed-point iteration on E = M + e*sin(E); independent of the Newton
/// solver under test.
inline double kepler_fixed_point(double mean_anomaly, double eccentricity,
                                 double tolerance = 1e-13) {
    double e_anom = mean_anomaly;
    for (int i = 0; i < 100000; ++i) {
        const double next = mean_anomaly + eccentricity * std::sin(e_anom);
        if (std::abs(next - e_anom) < tolerance) return next;
        e_anom = next;
    }
    return e_anom;
}

inline double elevation_deg_at(const GroundStation& station, const OrbitalElements& satellite,
                               const MissionConfig& mission, double t_mission_s) {
    const StateVector state =
        propagate(satellite, mission.epoch.plus_seconds(t_mission_s), /*j2_enabled=*/true);
    return look_angles(station, eci_to_ecef(state)).elevation_deg;
}

/// Ground-truth pass list at fixed-resolution sampling: maximal runs of
/// visible samples, as (first_visible_s, last_visible_s) pairs.
inline std::vector<std::pair<double, double>> brute_force_windows(
    const GroundStation& station, const OrbitalElements& satellite, const MissionConfig& mission,
    double step_s) {
    const PreparedOrbit orbit(satellite, /*j2_enabled=*/true);
    const double offset = mission.epoch.seconds_since(satellite.epoch);
    const Vec3 site = station_ecef(station);
    const double lat = deg_to_rad(station.latitude_deg);
    const double lon = deg_to_rad(station.longitude_deg);
    const Vec3 up{std::cos(lat) * std::cos(lon), std::cos(lat) * std::sin(lon), std::sin(lat)};
    const double sin_mask = std::sin(deg_to_rad(station.min_elevation_deg));

    std::vector<std::pair<double, double>> runs;
    bool open = false;
    double run_start = 0.0, last_visible = 0.0;
    for (double t = 0.0; t <= mission.duration_s + 1e-9; t += step_s) {
        const Vec3 ecef =
            eci_to_ecef(orbit.position_at_offset(offset + t), gmst_rad(mission.epoch.plus_seconds(t)));
        const Vec3 d = ecef - site;
        const bool vis = d.dot(up) - d.norm() * sin_mask >= 0.0;
        if (vis && !open) {
            open = true;
            run_start = t;
        }
        if (vis) last_visible = t;
        if (!vis && open) {
            runs.emplace_back(run_start, last_visible);
            open = false;
        }
    }
    if (open) runs.emplace_back(run_start, last_visible);
    return runs;
}

/// Random LEO-ish element set; perigee kept well above the atmosphere.
inline OrbitalElements random_leo(std::mt19937_64& rng, const Timestamp& epoch) {
    std::uniform_real_distribution<double> alt(400.0, 1200.0);
    std::uniform_real_distribution<double> ecc(0.0, 0.02);
    std::uniform_real_distribution<double> inc(0.0, 100.0);
    std::uniform_real_distribution<double> angle(0.0, 360.0);
    OrbitalElements el;
    el.semi_major_axis_km = EARTH_EQUATORIAL_RADIUS + alt(rng);
    el.eccentricity = ecc(rng);
    el.inclination_rad = deg_to_rad(inc(rng));
    el.raan_rad = deg_to_rad(angle(rng));
    el.arg_perigee_rad = deg_to_rad(angle(rng));
    el.mean_anomaly_rad = deg_to_rad(angle(rng));
    el.epoch = epoch;
    return el;
}

inline GroundStation random_station(std::mt19937_64& rng, const std::string& name) {
    std::uniform_real_distribution<double> lat(-70.0, 70.0);
    std::uniform_real_distribution<double> lon(-180.0, 180.0);
    std::uniform_real_distribution<double> alt(0.0, 1.0);
    std::uniform_real_distribution<double> mask(5.0, 40.0);
    GroundStation st;
    st.name = name;
    st.latitude_deg = lat(rng);
    st.longitude_deg = wrap_longitude_deg(lon(rng));
    st.altitude_km = alt(rng);
    st.min_elevation_deg = mask(rng);
    return st;
}

}  // namespace satpass::test
