#pragma once

#include "goigrid/geometry.hpp"
#include "goigrid/stays.hpp"
#include "goigrid/trajectory.hpp"

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>
#include <tuple>
#include <vector>

namespace goigrid::test {

inline const LatLon kOrigin{61.2181, -149.9003};

/// Trajectory from (t, x, y) triples in the planar frame.
inline Trajectory track(std::initializer_list<std::tuple<Timestamp, double, double>> fixes) {
    std::vector<TrackPoint> pts;
    for (const auto& [t, x, y] : fixes) pts.push_back({t, {x, y}, 0});
    return Trajectory(std::move(pts), kOrigin);
}

inline Region square(double x0, double y0, double side) {
    return Region::rectangle({x0, y0, x0 + side, y0 + side});
}

inline Region box(double x0, double y0, double x1, double y1) { return Region::rectangle({x0, y0, x1, y1}); }

/// Dwell-and-move trajectory with irregular sampling and occasional long gaps;
/// exercises breakouts, out-of-radius admissions and single-fix stays.
inline Trajectory random_trajectory(std::uint64_t seed, std::size_t n) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::normal_distribution<double> noise(0.0, 15.0);
    std::vector<TrackPoint> pts;
    Timestamp t = 1000;
    PlanarPoint anchor{0.0, 0.0};
    for (std::size_t i = 0; i < n; ++i) {
        const double u = unit(rng);
        if (u < 0.08) anchor = {anchor.x + (unit(rng) - 0.5) * 1200.0, anchor.y + (unit(rng) - 0.5) * 1200.0};
        else if (u < 0.12) anchor = {anchor.x + (unit(rng) - 0.5) * 250.0, anchor.y + (unit(rng) - 0.5) * 250.0};
        pts.push_back({t, {anchor.x + noise(rng), anchor.y + noise(rng)}, 0});
        const double g = unit(rng);
        t += g < 0.05 ? 1800 + static_cast<Timestamp>(unit(rng) * 7200) : 10 + static_cast<Timestamp>(unit(rng) * 290);
    }
    return Trajectory(std::move(pts), kOrigin);
}

/// Simple star-shaped polygon with 3 to 12 vertices around a random centre.
inline Region random_star_polygon(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> centre(-50.0, 50.0);
    std::uniform_real_distribution<double> radius(5.0, 40.0);
    std::uniform_real_distribution<double> jitter(0.1, 0.9);
    std::uniform_int_distribution<int> vertices(3, 12);
    const PlanarPoint c{centre(rng), centre(rng)};
    const int n = vertices(rng);
    std::vector<PlanarPoint> ring;
    for (int k = 0; k < n; ++k) {
        // Monotone angles keep the ring simple.
        const double a = 2.0 * std::numbers::pi * (k + jitter(rng)) / n;
        const double r = radius(rng);
        ring.push_back({c.x + r * std::cos(a), c.y + r * std::sin(a)});
    }
    return Region::from_ring(ring);
}

/// A stay whose geometry is the given rectangle, with its four corners as points.
inline Stay rect_stay(int id, double x0, double y0, double x1, double y1) {
    Stay s;
    s.id = id;
    s.g = box(x0, y0, x1, y1);
    s.c = s.g.centroid();
    s.ps = {{id * 100, {x0, y0}, 1}, {id * 100 + 1, {x1, y0}, 1}, {id * 100 + 2, {x1, y1}, 1},
            {id * 100 + 3, {x0, y1}, 0}};
    s.at = id * 100;
    s.dt = id * 100 + 3;
    return s;
}

} // namespace goigrid::test
