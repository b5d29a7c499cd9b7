#include "goigrid/svl.hpp"

#include "goigrid/error.hpp"

#include <string>

namespace goigrid {

std::string_view to_string(SvlKind k) {
    switch (k) {
    case SvlKind::goi: return "goi";
    case SvlKind::filler: return "filler";
    case SvlKind::destination: return "destination";
    }
    return "?";
}

SvlKind parse_svl_kind(std::string_view name) {
    if (name == "goi") return SvlKind::goi;
    if (name == "filler") return SvlKind::filler;
    if (name == "destination") return SvlKind::destination;
    throw InvalidInput("unknown SVL kind '" + std::string(name) + "'");
}

LabelStrategy parse_label_strategy(std::string_view name) {
    if (name == "intersection") return LabelStrategy::intersection;
    if (name == "nnq") return LabelStrategy::nnq;
    throw InvalidInput("unknown labelling strategy '" + std::string(name) + "'");
}

std::string_view to_string(LabelStrategy s) {
    return s == LabelStrategy::intersection ? "intersection" : "nnq";
}

std::vector<SvlEntry> collapse_repeats(std::span<const SvlEntry> entries) {
    std::vector<SvlEntry> out;
    for (const auto& e : entries)
        if (out.empty() || out.back().label != e.label || out.back().kind != e.kind) out.push_back(e);
    return out;
}

std::vector<SvlEntry> label_by_intersection(const Trajectory& traj, const FinalGrid& grid,
                                            bool collapse) {
    std::vector<SvlEntry> out;
    out.reserve(traj.size());
    for (std::size_t i = 0; i < traj.size(); ++i) {
        const auto& tp = traj[i];
        if (!grid.bbox().contains(tp.p))
            throw InvalidInput("fix " + std::to_string(i) +
                                   " lies outside the grid; was the grid built from this trajectory?",
                               i);
        const auto id = grid.locate(tp.p);
        if (!id) throw InvalidInput("fix " + std::to_string(i) + " is not covered by any cell", i);
        const auto kind = grid.cell(*id).kind == CellKind::goi ? SvlKind::goi : SvlKind::filler;
        out.push_back({tp.t, *id, kind});
    }
    return collapse ? collapse_repeats(out) : out;
}

std::vector<SvlEntry> label_by_nnq(const Trajectory& traj, std::span<const Destination> destinations,
                                   bool collapse) {
    if (destinations.empty()) throw InvalidInput("nearest-neighbour labelling needs destinations");
    std::vector<std::pair<int, PlanarPoint>> centroids;
    for (const auto& d : destinations) centroids.emplace_back(d.id, d.geometry.centroid());

    std::vector<SvlEntry> out;
    out.reserve(traj.size());
    for (const auto& tp : traj.points()) {
        int best_id = 0;
        double best = 0.0;
        bool first = true;
        for (const auto& [id, c] : centroids) {
            const double d = euclidean_distance(tp.p, c);
            if (first || d < best || (d == best && id < best_id)) {
                best = d;
                best_id = id;
                first = false;
            }
        }
        out.push_back({tp.t, best_id, SvlKind::destination});
    }
    return collapse ? collapse_repeats(out) : out;
}

} // namespace goigrid
