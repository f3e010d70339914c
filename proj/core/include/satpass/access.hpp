#pragma once

#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "satpass/ground_station.hpp"
#include "satpass/orbit.hpp"
#include "satpass/time.hpp"

namespace satpass {

/// Shared sampling parameters for one analysis run.
struct MissionConfig {
    Timestamp epoch;
    double duration_s = 86400.0;
    double sample_step_s = 10.0;
    double refine_tolerance_s = 0.01;

    void validate() const;
};

/// One contiguous visibility interval, in mission seconds.
struct AccessWindow {
    std::string station_name;
    std::string satellite_id;
    double t_rise_s = 0.0;
    double t_set_s = 0.0;

    double duration_s() const { return t_set_s - t_rise_s; }
};

struct SatelliteWindows {
    std::string satellite_id;
    std::vector<AccessWindow> windows;

    double total_access_s() const;
};

/// One table row: per-(station, constellation) access statistics.
struct AccessMetrics {
    std::string constellation_name;
    std::string station_name;
    std::size_t total_satellites = 0;
    double accessible_ratio = 0.0;     // accessible sats / total
    double mean_access_time_s = 0.0;   // mean total access per accessible satellite
    double gamma = 0.0;                // mean_access_time_s / mission duration
};

/// Samples elevation-minus-mask at the mission step, brackets every sign
/// change and refines it by bisection to the refine tolerance. Local maxima
/// that stay under the mask between samples are probed, so passes shorter
/// than the step are still found. Windows come back sorted, disjoint
/// (gaps > tolerance merged) and clipped to [0, duration]; windows shorter
/// than the tolerance are dropped.
std::vector<AccessWindow> compute_windows(const GroundStation& station,
                                          const OrbitalElements& satellite,
                                          const MissionConfig& mission);

/// compute_windows for every satellite of a constellation against one
/// station, evaluated in parallel. Output order matches the input order.
std::vector<SatelliteWindows> compute_constellation_windows(
    const GroundStation& station, std::span<const Satellite> satellites,
    const MissionConfig& mission, unsigned threads = 0);

/// Table-row statistics from per-satellite window groups.
/// accessible_ratio = |sats with >= 1 window| / total; T_a averages the
/// summed window time over accessible satellites; gamma = T_a / duration.
AccessMetrics constellation_metrics(std::string_view station_name,
                                    std::string_view constellation_name,
                                    std::span<const SatelliteWindows> per_satellite,
                                    std::size_t total_satellites, const MissionConfig& mission);

/// Total length of the union of [start, end) intervals.
double union_duration(std::vector<std::pair<double, double>> intervals);

/// For each satellite, the fraction of the mission it is visible from at
/// least one station (interval union across the whole station list).
std::vector<double> per_satellite_union_ratios(std::span<const GroundStation> stations,
                                               std::span<const Satellite> satellites,
                                               const MissionConfig& mission,
                                               unsigned threads = 0);

/// Mean of per_satellite_union_ratios over the constellation.
double network_union_ratio(std::span<const GroundStation> stations,
                           std::span<const Satellite> satellites,
                           const MissionConfig& mission, unsigned threads = 0);

/// Upper bound on the data moved during `access_time_s` at `link_rate_bps`.
double data_volume_bound_bits(double access_time_s, double link_rate_bps);

}  // namespace satpass
