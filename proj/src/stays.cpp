#include "goigrid/stays.hpp"

#include "goigrid/error.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace goigrid {

void StayParams::validate() const {
    if (!(d_max > 0.0) || !(t_min > 0.0) || !(buffer_width > 0.0) || !(diam_max > 0.0))
        throw InvalidInput("stay parameters must be strictly positive");
}

std::string_view to_string(StayMethod m) {
    switch (m) {
    case StayMethod::twc: return "twc";
    case StayMethod::reference_point: return "refpoint";
    case StayMethod::diameter: return "diameter";
    }
    return "?";
}

StayMethod parse_stay_method(std::string_view name) {
    if (name == "twc") return StayMethod::twc;
    if (name == "refpoint" || name == "reference_point") return StayMethod::reference_point;
    if (name == "diameter") return StayMethod::diameter;
    throw InvalidInput("unknown stay method '" + std::string(name) + "'");
}

Stay make_stay(int id, const Trajectory& traj, std::size_t first, std::size_t last, Timestamp at,
               Timestamp dt, double buffer_width) {
    Stay s;
    s.id = id;
    s.first_index = first;
    s.ps.assign(traj.points().begin() + static_cast<std::ptrdiff_t>(first),
                traj.points().begin() + static_cast<std::ptrdiff_t>(last) + 1);
    std::vector<PlanarPoint> xy;
    xy.reserve(s.ps.size());
    for (const auto& p : s.ps) xy.push_back(p.p);
    s.g = buffer(convex_hull(xy), buffer_width);
    s.c = s.g.centroid();
    s.at = at;
    s.dt = dt;
    return s;
}

namespace {

// Running sums of a working set, added in index order.
class WeightedSums {
public:
    explicit WeightedSums(const TrackPoint& seed) { add(seed); }

    void add(const TrackPoint& p) {
        const double w = static_cast<double>(p.tv);
        wx_ += p.p.x * w;
        wy_ += p.p.y * w;
        w_ += w;
        x_ += p.p.x;
        y_ += p.p.y;
        ++n_;
    }

    PlanarPoint centroid() const {
        if (w_ <= 0.0) return {x_ / static_cast<double>(n_), y_ / static_cast<double>(n_)};
        return {wx_ / w_, wy_ / w_};
    }

private:
    double wx_ = 0.0, wy_ = 0.0, w_ = 0.0;
    double x_ = 0.0, y_ = 0.0;
    std::size_t n_ = 0;
};

} // namespace

std::vector<Stay> extract_stays_twc(const Trajectory& traj, const StayParams& params,
                                    TwcStats* stats) {
    params.validate();
    const auto& pts = traj.points();
    const std::size_t n = pts.size();
    std::vector<Stay> stays;
    TwcStats local;

    std::size_t i = 0;
    while (i < n) {
        WeightedSums set(pts[i]);
        PlanarPoint twc = set.centroid();
        bool emitted = false;
        for (std::size_t j = i + 1; j < n; ++j) {
            if (euclidean_distance(twc, pts[j].p) > params.d_max) {
                const Timestamp departure = pts[j].t + pts[j].tv;
                if (static_cast<double>(departure - pts[i].t) >= params.t_min) {
                    stays.push_back(make_stay(static_cast<int>(stays.size()), traj, i, j - 1,
                                              pts[i].t, departure, params.buffer_width));
                    i = j;
                    emitted = true;
                    break;
                }
                ++local.out_of_radius_admissions;
            }
            set.add(pts[j]);
            twc = set.centroid();
        }
        if (!emitted) ++i;
    }
    if (stats) *stats = local;
    return stays;
}

std::vector<Stay> extract_stays_reference_point(const Trajectory& traj, const StayParams& params) {
    params.validate();
    const auto& pts = traj.points();
    const std::size_t n = pts.size();
    std::vector<Stay> stays;

    std::size_t i = 0;
    while (i < n) {
        bool emitted = false;
        for (std::size_t j = i + 1; j < n; ++j) {
            if (euclidean_distance(pts[i].p, pts[j].p) <= params.d_max) continue;
            // At least two fixes: the baseline has no time-values to credit a lone fix.
            if (j - i >= 2 && static_cast<double>(pts[j].t - pts[i].t) >= params.t_min) {
                stays.push_back(make_stay(static_cast<int>(stays.size()), traj, i, j - 1, pts[i].t,
                                          pts[j].t, params.buffer_width));
                i = j;
                emitted = true;
            }
            break;
        }
        if (!emitted) ++i;
    }
    return stays;
}

std::vector<Stay> extract_stays_diameter(const Trajectory& traj, const StayParams& params) {
    params.validate();
    const auto& pts = traj.points();
    const std::size_t n = pts.size();
    std::vector<Stay> stays;

    std::size_t i = 0;
    while (i < n) {
        bool emitted = false;
        double diameter = 0.0;
        for (std::size_t j = i + 1; j < n; ++j) {
            double widest = diameter;
            for (std::size_t k = i; k < j; ++k)
                widest = std::max(widest, euclidean_distance(pts[k].p, pts[j].p));
            if (widest <= params.diam_max) {
                diameter = widest;
                continue;
            }
            if (j - i >= 2 && static_cast<double>(pts[j].t - pts[i].t) >= params.t_min) {
                stays.push_back(make_stay(static_cast<int>(stays.size()), traj, i, j - 1, pts[i].t,
                                          pts[j].t, params.buffer_width));
                i = j;
                emitted = true;
            }
            break;
        }
        if (!emitted) ++i;
    }
    return stays;
}

std::vector<Stay> extract_stays(const Trajectory& traj, const StayParams& params, StayMethod method) {
    switch (method) {
    case StayMethod::twc: return extract_stays_twc(traj, params);
    case StayMethod::reference_point: return extract_stays_reference_point(traj, params);
    case StayMethod::diameter: return extract_stays_diameter(traj, params);
    }
    return {};
}

} // namespace goigrid
