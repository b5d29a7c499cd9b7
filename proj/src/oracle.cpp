#include "goigrid/oracle.hpp"

#include "goigrid/error.hpp"

#include <algorithm>
#include <cmath>

namespace goigrid {

namespace {

double dist(const PlanarPoint& a, const PlanarPoint& b) { return std::hypot(a.x - b.x, a.y - b.y); }

PlanarPoint weighted_mean(const std::vector<TrackPoint>& set) {
    double wx = 0.0, wy = 0.0, w = 0.0, x = 0.0, y = 0.0;
    for (const auto& p : set) {
        wx += p.p.x * static_cast<double>(p.tv);
        wy += p.p.y * static_cast<double>(p.tv);
        w += static_cast<double>(p.tv);
        x += p.p.x;
        y += p.p.y;
    }
    if (w <= 0.0) return {x / static_cast<double>(set.size()), y / static_cast<double>(set.size())};
    return {wx / w, wy / w};
}

double diameter(const std::vector<TrackPoint>& set) {
    double d = 0.0;
    for (std::size_t a = 0; a < set.size(); ++a)
        for (std::size_t b = a + 1; b < set.size(); ++b) d = std::max(d, dist(set[a].p, set[b].p));
    return d;
}

std::vector<Stay> twc(const Trajectory& traj, const StayParams& prm) {
    const auto& P = traj.points();
    std::vector<Stay> S;
    std::size_t i = 0;
    while (i < P.size()) {
        std::vector<TrackPoint> ps{P[i]};
        PlanarPoint c = weighted_mean(ps);
        std::size_t j = i + 1;
        int token = 0;
        while (j < P.size()) {
            if (dist(c, P[j].p) > prm.d_max) {
                const auto delta_t = (P[j].t + P[j].tv) - P[i].t;
                if (static_cast<double>(delta_t) >= prm.t_min) {
                    S.push_back(make_stay(static_cast<int>(S.size()), traj, i, j - 1, P[i].t,
                                          P[j].t + P[j].tv, prm.buffer_width));
                    i = j;
                    token = 1;
                    break;
                }
            }
            ps.push_back(P[j]);
            c = weighted_mean(ps);
            ++j;
        }
        if (token != 1) ++i;
    }
    return S;
}

template <typename Breaks>
std::vector<Stay> window_baseline(const Trajectory& traj, const StayParams& prm, Breaks breaks) {
    const auto& P = traj.points();
    std::vector<Stay> S;
    std::size_t i = 0;
    while (i < P.size()) {
        std::vector<TrackPoint> window{P[i]};
        int token = 0;
        for (std::size_t j = i + 1; j < P.size(); ++j) {
            if (!breaks(window, P[j])) {
                window.push_back(P[j]);
                continue;
            }
            if (window.size() >= 2 && static_cast<double>(P[j].t - P[i].t) >= prm.t_min) {
                S.push_back(make_stay(static_cast<int>(S.size()), traj, i, j - 1, P[i].t, P[j].t,
                                      prm.buffer_width));
                i = j;
                token = 1;
            }
            break;
        }
        if (token != 1) ++i;
    }
    return S;
}

} // namespace

std::vector<Stay> brute_force_stay_oracle(const Trajectory& traj, const StayParams& params,
                                          StayMethod method) {
    if (traj.size() > kOracleMaxPoints)
        throw InvalidInput("oracle is limited to " + std::to_string(kOracleMaxPoints) + " points");
    params.validate();
    switch (method) {
    case StayMethod::twc: return twc(traj, params);
    case StayMethod::reference_point:
        return window_baseline(traj, params, [&](const auto& w, const TrackPoint& p) {
            return dist(w.front().p, p.p) > params.d_max;
        });
    case StayMethod::diameter:
        return window_baseline(traj, params, [&](auto w, const TrackPoint& p) {
            w.push_back(p);
            return diameter(w) > params.diam_max;
        });
    }
    return {};
}

std::vector<Destination> brute_force_merge_oracle(std::span<const Stay> stays, double j_min) {
    if (stays.size() > kMergeOracleMaxStays)
        throw InvalidInput("merge oracle is limited to " + std::to_string(kMergeOracleMaxStays) + " stays");
    std::vector<Destination> C;
    for (const auto& s : stays) C.push_back(destination_from_stay(s));
    std::sort(C.begin(), C.end(), [](const auto& a, const auto& b) { return a.id < b.id; });

    for (;;) {
        double best = -1.0;
        std::size_t ba = 0, bb = 0;
        for (std::size_t a = 0; a < C.size(); ++a)
            for (std::size_t b = a + 1; b < C.size(); ++b) {
                if (!intersects(C[a].geometry, C[b].geometry)) continue;
                const double J = jaccard(C[a].geometry, C[b].geometry);
                if (J > best) {
                    best = J;
                    ba = a;
                    bb = b;
                }
            }
        if (!(best > j_min)) break;
        absorb(C[ba], C[bb]);
        C.erase(C.begin() + static_cast<std::ptrdiff_t>(bb));
    }
    return C;
}

} // namespace goigrid
