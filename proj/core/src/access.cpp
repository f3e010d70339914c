#include "satpass/access.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "detail/golden.hpp"
#include "detail/parallel.hpp"
#include "satpass/constants.hpp"
#include "satpass/frames.hpp"

namespace satpass {

void MissionConfig::validate() const {
    if (!(duration_s > 0.0))
        throw std::invalid_argument("mission duration must be positive");
    if (!(sample_step_s > 0.0 && sample_step_s < duration_s))
        throw std::invalid_argument("sample step must lie in (0, duration)");
    if (!(refine_tolerance_s > 0.0 && refine_tolerance_s < sample_step_s))
        throw std::invalid_argument("refine tolerance must lie in (0, sample step)");
}

double SatelliteWindows::total_access_s() const {
    double total = 0.0;
    for (const auto& w : windows) total += w.duration_s();
    return total;
}

namespace {

// Sign-equivalent visibility function for one (station, satellite) pair:
// up - range*sin(mask) has the same zeros as elevation - mask but avoids
// the asin on the sampling hot path.
class VisibilitySampler {
public:
    VisibilitySampler(const GroundStation& station, const OrbitalElements& satellite,
                      const MissionConfig& mission)
        : orbit_(satellite, /*j2_enabled=*/true),
          mission_epoch_(mission.epoch),
          epoch_offset_s_(mission.epoch.seconds_since(satellite.epoch)),
          site_(station_ecef(station)),
          sin_mask_(std::sin(deg_to_rad(station.min_elevation_deg))) {
        const double lat = deg_to_rad(station.latitude_deg);
        const double lon = deg_to_rad(station.longitude_deg);
        up_ = {std::cos(lat) * std::cos(lon), std::cos(lat) * std::sin(lon), std::sin(lat)};
    }

    double operator()(double t_mission_s) const {
        const Vec3 eci = orbit_.position_at_offset(epoch_offset_s_ + t_mission_s);
        const Vec3 ecef = eci_to_ecef(eci, gmst_rad(mission_epoch_.plus_seconds(t_mission_s)));
        const Vec3 d = ecef - site_;
        return d.dot(up_) - d.norm() * sin_mask_;
    }

private:
    PreparedOrbit orbit_;
    Timestamp mission_epoch_;
    double epoch_offset_s_;
    Vec3 site_;
    Vec3 up_;       // geodetic normal
    double sin_mask_;
};

}  // namespace

std::vector<AccessWindow> compute_windows(const GroundStation& station,
                                          const OrbitalElements& satellite,
                                          const MissionConfig& mission) {
    mission.validate();
    station.validate();
    const VisibilitySampler f(station, satellite, mission);
    const double tol = mission.refine_tolerance_s;

    std::vector<double> ts;
    ts.reserve(static_cast<std::size_t>(mission.duration_s / mission.sample_step_s) + 2);
    for (double t = 0.0; t < mission.duration_s; t += mission.sample_step_s) ts.push_back(t);
    ts.push_back(mission.duration_s);

    std::vector<double> fs(ts.size());
    for (std::size_t k = 0; k < ts.size(); ++k) fs[k] = f(ts[k]);

    // f(lo) < 0 <= f(hi) or the reverse; returns the bracket midpoint once
    // it is narrower than the tolerance
    const auto bisect = [&](double lo, double hi, bool rising) {
        while (hi - lo > tol) {
            const double mid = 0.5 * (lo + hi);
            const bool vis = f(mid) >= 0.0;
            if (vis == rising) hi = mid;
            else lo = mid;
        }
        return 0.5 * (lo + hi);
    };

    std::vector<std::pair<double, double>> raw;
    bool open = fs[0] >= 0.0;
    double rise = 0.0;
    for (std::size_t k = 1; k < ts.size(); ++k) {
        const bool vis = fs[k] >= 0.0;
        if (!open && vis) {
            rise = bisect(ts[k - 1], ts[k], true);
            open = true;
        } else if (open && !vis) {
            raw.emplace_back(rise, bisect(ts[k - 1], ts[k], false));
            open = false;
        }
    }
    if (open) raw.emplace_back(rise, mission.duration_s);

    // Passes can culminate and end between two invisible samples. Probe the
    // sampled local maxima of f; when one pokes above the mask, bracket the
    // hidden pass on both flanks.
    const auto probe = [&](std::size_t lo_idx, std::size_t hi_idx) {
        const auto [t_peak, f_peak] =
            detail::golden_maximize(f, ts[lo_idx], ts[hi_idx], tol);
        if (f_peak < 0.0) return;
        raw.emplace_back(bisect(ts[lo_idx], t_peak, true), bisect(t_peak, ts[hi_idx], false));
    };
    const std::size_t n = ts.size();
    for (std::size_t k = 0; k < n; ++k) {
        if (fs[k] >= 0.0) continue;
        const bool left_invisible = k == 0 || fs[k - 1] < 0.0;
        const bool right_invisible = k + 1 >= n || fs[k + 1] < 0.0;
        if (!left_invisible || !right_invisible) continue;  // crossing already handled
        const bool is_peak = (k == 0 || fs[k] >= fs[k - 1]) && (k + 1 >= n || fs[k] >= fs[k + 1]);
        if (!is_peak) continue;
        probe(k == 0 ? 0 : k - 1, k + 1 >= n ? n - 1 : k + 1);
    }

    std::sort(raw.begin(), raw.end());
    std::vector<AccessWindow> windows;
    for (const auto& [start, end] : raw) {
        if (!windows.empty() && start - windows.back().t_set_s <= tol) {
            windows.back().t_set_s = std::max(windows.back().t_set_s, end);
            continue;
        }
        AccessWindow w;
        w.station_name = station.name;
        w.t_rise_s = std::max(0.0, start);
        w.t_set_s = std::min(mission.duration_s, end);
        windows.push_back(std::move(w));
    }
    // below timing resolution, operationally meaningless
    std::erase_if(windows, [&](const AccessWindow& w) { return w.duration_s() <= tol; });
    return windows;
}

std::vector<SatelliteWindows> compute_constellation_windows(
    const GroundStation& station, std::span<const Satellite> satellites,
    const MissionConfig& mission, unsigned threads) {
    std::vector<SatelliteWindows> result(satellites.size());
    detail::parallel_for(satellites.size(), threads, [&](std::size_t i) {
        result[i].satellite_id = satellites[i].id;
        result[i].windows = compute_windows(station, satellites[i].elements, mission);
        for (auto& w : result[i].windows) w.satellite_id = satellites[i].id;
    });
    return result;
}

AccessMetrics constellation_metrics(std::string_view station_name,
                                    std::string_view constellation_name,
                                    std::span<const SatelliteWindows> per_satellite,
                                    std::size_t total_satellites, const MissionConfig& mission) {
    if (total_satellites == 0)
        throw std::invalid_argument("constellation_metrics: total satellite count is zero");
    mission.validate();

    std::size_t accessible = 0;
    double total_access = 0.0;
    for (const auto& group : per_satellite) {
        if (group.windows.empty()) continue;
        ++accessible;
        total_access += group.total_access_s();
    }

    AccessMetrics m;
    m.constellation_name = std::string(constellation_name);
    m.station_name = std::string(station_name);
    m.total_satellites = total_satellites;
    m.accessible_ratio = static_cast<double>(accessible) / static_cast<double>(total_satellites);
    m.mean_access_time_s = accessible == 0 ? 0.0 : total_access / static_cast<double>(accessible);
    m.gamma = m.mean_access_time_s / mission.duration_s;
    return m;
}

double union_duration(std::vector<std::pair<double, double>> intervals) {
    std::sort(intervals.begin(), intervals.end());
    double total = 0.0;
    double cur_start = 0.0, cur_end = 0.0;
    bool active = false;
    for (const auto& [start, end] : intervals) {
        if (end <= start) continue;
        if (!active || start > cur_end) {
            if (active) total += cur_end - cur_start;
            cur_start = start;
            cur_end = end;
            active = true;
        } else {
            cur_end = std::max(cur_end, end);
        }
    }
    if (active) total += cur_end - cur_start;
    return total;
}

std::vector<double> per_satellite_union_ratios(std::span<const GroundStation> stations,
                                               std::span<const Satellite> satellites,
                                               const MissionConfig& mission, unsigned threads) {
    if (stations.empty())
        throw std::invalid_argument("network analysis needs at least one station");
    if (satellites.empty())
        throw std::invalid_argument("network analysis needs a non-empty constellation");
    mission.validate();

    std::vector<double> ratios(satellites.size());
    detail::parallel_for(satellites.size(), threads, [&](std::size_t i) {
        std::vector<std::pair<double, double>> intervals;
        for (const auto& station : stations) {
            for (const auto& w : compute_windows(station, satellites[i].elements, mission))
                intervals.emplace_back(w.t_rise_s, w.t_set_s);
        }
        ratios[i] = union_duration(std::move(intervals)) / mission.duration_s;
    });
    return ratios;
}

double network_union_ratio(std::span<const GroundStation> stations,
                           std::span<const Satellite> satellites,
                           const MissionConfig& mission, unsigned threads) {
    const auto ratios = per_satellite_union_ratios(stations, satellites, mission, threads);
    double sum = 0.0;
    for (double r : ratios) sum += r;
    return sum / static_cast<double>(ratios.size());
}

double data_volume_bound_bits(double access_time_s, double link_rate_bps) {
    if (access_time_s < 0.0) throw std::invalid_argument("access time must be non-negative");
    if (link_rate_bps < 0.0) throw std::invalid_argument("link rate must be non-negative");
    return access_time_s * link_rate_bps;
}

}  // namespace satpass
