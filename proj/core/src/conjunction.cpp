#include "satpass/conjunction.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "detail/golden.hpp"
#include "detail/parallel.hpp"

namespace satpass {

namespace {

constexpr double TCA_RESOLUTION_S = 1e-3;

struct PairDistance {
    PairDistance(const Satellite& a, const Satellite& b, const MissionConfig& interval)
        : orbit_a(a.elements, /*j2_enabled=*/true),
          orbit_b(b.elements, /*j2_enabled=*/true),
          offset_a(interval.epoch.seconds_since(a.elements.epoch)),
          offset_b(interval.epoch.seconds_since(b.elements.epoch)) {}

    double operator()(double t_s) const {
        return (orbit_a.position_at_offset(offset_a + t_s) -
                orbit_b.position_at_offset(offset_b + t_s))
            .norm();
    }

    PreparedOrbit orbit_a;
    PreparedOrbit orbit_b;
    double offset_a;
    double offset_b;
};

}  // namespace

ConjunctionEvent pair_min_distance(const Satellite& a, const Satellite& b,
                                   const MissionConfig& interval, double coarse_step_s) {
    if (a.id == b.id)
        throw std::invalid_argument("pair_min_distance needs two distinct satellites");
    if (!(coarse_step_s > 0.0))
        throw std::invalid_argument("coarse step must be positive");
    if (!(interval.duration_s > 0.0))
        throw std::invalid_argument("screening interval must be positive");

    const PairDistance dist(a, b, interval);

    std::vector<double> ts;
    ts.reserve(static_cast<std::size_t>(interval.duration_s / coarse_step_s) + 2);
    for (double t = 0.0; t < interval.duration_s; t += coarse_step_s) ts.push_back(t);
    ts.push_back(interval.duration_s);

    std::vector<double> ds(ts.size());
    for (std::size_t k = 0; k < ts.size(); ++k) ds[k] = dist(ts[k]);

    // scan in time order; strict < keeps the earliest time on ties
    double best_t = ts[0];
    double best_d = ds[0];
    for (std::size_t k = 1; k < ts.size(); ++k) {
        if (ds[k] < best_d) {
            best_d = ds[k];
            best_t = ts[k];
        }
    }

    const std::size_t n = ts.size();
    for (std::size_t k = 0; k < n; ++k) {
        const bool left_ok = k == 0 || ds[k] <= ds[k - 1];
        const bool right_ok = k + 1 >= n || ds[k] <= ds[k + 1];
        if (!left_ok || !right_ok) continue;
        const double lo = ts[k == 0 ? 0 : k - 1];
        const double hi = ts[k + 1 >= n ? n - 1 : k + 1];
        if (hi <= lo) continue;
        const auto [t_min, d_min] = detail::golden_minimize(dist, lo, hi, TCA_RESOLUTION_S);
        if (d_min < best_d) {
            best_d = d_min;
            best_t = t_min;
        }
    }

    ConjunctionEvent event;
    event.satellite_a = a.id;
    event.satellite_b = b.id;
    event.time_of_closest_approach_s = best_t;
    event.miss_distance_km = best_d;
    return event;
}

std::vector<ConjunctionEvent> screen_constellation(std::span<const Satellite> satellites,
                                                   const MissionConfig& interval,
                                                   const ScreenOptions& options) {
    if (satellites.size() < 2)
        throw std::invalid_argument("screening needs at least two satellites");

    // flattened upper-triangle pair list
    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    pairs.reserve(satellites.size() * (satellites.size() - 1) / 2);
    for (std::size_t i = 0; i < satellites.size(); ++i)
        for (std::size_t j = i + 1; j < satellites.size(); ++j) pairs.emplace_back(i, j);

    std::vector<ConjunctionEvent> results(pairs.size());
    std::vector<char> kept(pairs.size(), 0);

    detail::parallel_for(pairs.size(), options.threads, [&](std::size_t p) {
        const auto [i, j] = pairs[p];
        const Satellite& a = satellites[i];
        const Satellite& b = satellites[j];
        if (options.altitude_prefilter) {
            const double lo_a = a.elements.perigee_radius_km() - options.threshold_km;
            const double hi_a = a.elements.apogee_radius_km() + options.threshold_km;
            const double lo_b = b.elements.perigee_radius_km() - options.threshold_km;
            const double hi_b = b.elements.apogee_radius_km() + options.threshold_km;
            if (hi_a < lo_b || hi_b < lo_a) return;  // radial bands disjoint
        }
        const ConjunctionEvent event = pair_min_distance(a, b, interval, options.coarse_step_s);
        if (event.miss_distance_km < options.threshold_km) {
            results[p] = event;
            kept[p] = 1;
        }
    });

    std::vector<ConjunctionEvent> events;
    for (std::size_t p = 0; p < pairs.size(); ++p)
        if (kept[p]) events.push_back(std::move(results[p]));
    std::sort(events.begin(), events.end(), [](const ConjunctionEvent& x, const ConjunctionEvent& y) {
        if (x.miss_distance_km != y.miss_distance_km) return x.miss_distance_km < y.miss_distance_km;
        if (x.satellite_a != y.satellite_a) return x.satellite_a < y.satellite_a;
        return x.satellite_b < y.satellite_b;
    });
    return events;
}

}  // namespace satpass
