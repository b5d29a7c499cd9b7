#include "goigrid/destinations.hpp"

#include "goigrid/error.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <string>

namespace goigrid {

void MergeParams::validate() const {
    if (!(j_min >= 0.0 && j_min <= 1.0)) throw InvalidInput("j_min must lie in [0, 1]");
    if (f_min < 1) throw InvalidInput("f_min must be at least 1");
    if (!(eps > 0.0)) throw InvalidInput("eps must be positive");
    if (min_pts < 1) throw InvalidInput("min_pts must be at least 1");
    if (!(diameter_min > 0.0)) throw InvalidInput("diameter_min must be positive");
}

std::string_view to_string(DestinationMethod m) {
    switch (m) {
    case DestinationMethod::geometric: return "geometric";
    case DestinationMethod::optics: return "optics";
    case DestinationMethod::diameter: return "diameter";
    }
    return "?";
}

DestinationMethod parse_destination_method(std::string_view name) {
    if (name == "geometric" || name == "gs") return DestinationMethod::geometric;
    if (name == "optics") return DestinationMethod::optics;
    if (name == "diameter") return DestinationMethod::diameter;
    throw InvalidInput("unknown destination method '" + std::string(name) + "'");
}

Destination destination_from_stay(const Stay& stay) {
    return {stay.id, stay.g, stay.ps, 1, {stay.id}};
}

void absorb(Destination& into, const Destination& other) {
    into.points.insert(into.points.end(), other.points.begin(), other.points.end());
    into.geometry = unite(into.geometry, other.geometry);
    into.frequency += other.frequency;
    into.stay_ids.insert(into.stay_ids.end(), other.stay_ids.begin(), other.stay_ids.end());
    std::sort(into.stay_ids.begin(), into.stay_ids.end());
}

namespace {

using PairKey = std::pair<int, int>;

PairKey key_of(int a, int b) { return {std::min(a, b), std::max(a, b)}; }

std::map<int, Destination> singletons(std::span<const Stay> stays) {
    std::map<int, Destination> clusters;
    for (const auto& s : stays)
        if (!clusters.emplace(s.id, destination_from_stay(s)).second)
            throw InvalidInput("duplicate stay id " + std::to_string(s.id));
    return clusters;
}

std::vector<Destination> values_of(std::map<int, Destination>&& clusters) {
    std::vector<Destination> out;
    out.reserve(clusters.size());
    for (auto& [id, d] : clusters) out.push_back(std::move(d));
    return out;
}

SpatialIndex index_of(const std::map<int, Destination>& clusters) {
    std::vector<std::pair<SpatialIndex::Id, Region>> entries;
    entries.reserve(clusters.size());
    for (const auto& [id, d] : clusters) entries.emplace_back(id, d.geometry);
    return SpatialIndex(std::move(entries));
}

// Similarity of `id` against every intersecting cluster, recorded in `sims`.
void score_against(int id, const std::map<int, Destination>& clusters, const SpatialIndex& index,
                   std::map<PairKey, double>& sims) {
    for (auto other : index.query(clusters.at(id).geometry)) {
        if (other == id) continue;
        // Always measured smaller id first so a pair's score does not depend on who asked.
        const PairKey k = key_of(id, static_cast<int>(other));
        sims[k] = jaccard(clusters.at(k.first).geometry, clusters.at(k.second).geometry);
    }
}

} // namespace

std::vector<Destination> merge_geometric_similarity_unfiltered(std::span<const Stay> stays,
                                                               double j_min) {
    auto clusters = singletons(stays);
    if (clusters.empty()) return {};

    std::map<PairKey, double> sims;
    {
        const SpatialIndex index = index_of(clusters);
        for (const auto& [id, d] : clusters) score_against(id, clusters, index, sims);
    }

    while (!sims.empty()) {
        // Highest similarity wins; map order gives the smallest key among ties.
        auto best = sims.begin();
        for (auto it = sims.begin(); it != sims.end(); ++it)
            if (it->second > best->second) best = it;
        if (!(best->second > j_min)) break;

        const auto [keep, gone] = best->first;
        absorb(clusters.at(keep), clusters.at(gone));
        clusters.erase(gone);
        std::erase_if(sims, [k = keep, g = gone](const auto& e) {
            return e.first.first == k || e.first.second == k || e.first.first == g ||
                   e.first.second == g;
        });
        const SpatialIndex index = index_of(clusters);
        score_against(keep, clusters, index, sims);
    }
    return values_of(std::move(clusters));
}

std::vector<Destination> merge_geometric_similarity(std::span<const Stay> stays,
                                                    const MergeParams& params) {
    params.validate();
    auto merged = merge_geometric_similarity_unfiltered(stays, params.j_min);
    std::erase_if(merged, [&](const Destination& d) { return d.frequency < params.f_min; });
    return merged;
}

// OPTICS -------------------------------------------------------------------------

OpticsOrdering optics_ordering(std::span<const PlanarPoint> points, double eps, int min_pts) {
    const std::size_t n = points.size();
    OpticsOrdering result;
    result.reachability.assign(n, OpticsOrdering::kUndefined);
    result.core_distance.assign(n, OpticsOrdering::kUndefined);
    result.order.reserve(n);

    // eps-neighbourhoods (the point itself included), sorted by distance.
    std::vector<std::vector<std::pair<double, std::size_t>>> neighbours(n);
    for (std::size_t a = 0; a < n; ++a) {
        for (std::size_t b = 0; b < n; ++b) {
            const double d = euclidean_distance(points[a], points[b]);
            if (d <= eps) neighbours[a].emplace_back(d, b);
        }
        std::sort(neighbours[a].begin(), neighbours[a].end());
        if (neighbours[a].size() >= static_cast<std::size_t>(min_pts))
            result.core_distance[a] = neighbours[a][static_cast<std::size_t>(min_pts) - 1].first;
    }

    std::vector<bool> processed(n, false);
    std::set<std::pair<double, std::size_t>> seeds;
    auto update = [&](std::size_t p) {
        const double core = result.core_distance[p];
        for (const auto& [d, o] : neighbours[p]) {
            if (processed[o]) continue;
            const double reach = std::max(core, d);
            double& current = result.reachability[o];
            if (reach < current) {
                if (current != OpticsOrdering::kUndefined) seeds.erase({current, o});
                current = reach;
                seeds.emplace(reach, o);
            }
        }
    };

    for (std::size_t p = 0; p < n; ++p) {
        if (processed[p]) continue;
        processed[p] = true;
        result.order.push_back(p);
        if (result.core_distance[p] == OpticsOrdering::kUndefined) continue;
        update(p);
        while (!seeds.empty()) {
            const std::size_t q = seeds.begin()->second;
            seeds.erase(seeds.begin());
            processed[q] = true;
            result.order.push_back(q);
            if (result.core_distance[q] != OpticsOrdering::kUndefined) update(q);
        }
    }
    return result;
}

std::vector<int> extract_clusters(const OpticsOrdering& ordering, double eps) {
    std::vector<int> labels(ordering.reachability.size(), -1);
    int current = -1;
    int next = 0;
    for (std::size_t o : ordering.order) {
        if (ordering.reachability[o] > eps) {
            if (ordering.core_distance[o] <= eps) {
                current = next++;
                labels[o] = current;
            } else {
                labels[o] = -1;
            }
        } else {
            labels[o] = current;
        }
    }
    return labels;
}

std::vector<Destination> optics_cluster(std::span<const Stay> stays, const MergeParams& params) {
    params.validate();
    std::vector<PlanarPoint> centroids;
    centroids.reserve(stays.size());
    for (const auto& s : stays) centroids.push_back(s.c);
    const auto labels = extract_clusters(optics_ordering(centroids, params.eps, params.min_pts),
                                         params.eps);

    // Members are folded in input order; the destination takes the first member's id.
    std::map<int, Destination> by_label;
    for (std::size_t k = 0; k < stays.size(); ++k) {
        if (labels[k] < 0) continue;
        auto it = by_label.find(labels[k]);
        if (it == by_label.end())
            by_label.emplace(labels[k], destination_from_stay(stays[k]));
        else
            absorb(it->second, destination_from_stay(stays[k]));
    }
    std::map<int, Destination> by_id;
    for (auto& [label, d] : by_label) {
        const int id = d.stay_ids.front();
        d.id = id;
        by_id.emplace(id, std::move(d));
    }
    return values_of(std::move(by_id));
}

// Diameter merging -----------------------------------------------------------------

namespace {

double max_cross_distance(const std::vector<PlanarPoint>& a, const std::vector<PlanarPoint>& b) {
    double d = 0.0;
    for (const auto& p : a)
        for (const auto& q : b) d = std::max(d, euclidean_distance(p, q));
    return d;
}

} // namespace

std::vector<Destination> merge_diameter(std::span<const Stay> stays, const MergeParams& params) {
    params.validate();
    auto clusters = singletons(stays);

    // The farthest pair of a point set is always a pair of hull vertices.
    std::map<int, std::vector<PlanarPoint>> extremes;
    std::map<int, double> diameter;
    for (const auto& [id, d] : clusters) {
        std::vector<PlanarPoint> xy;
        for (const auto& p : d.points) xy.push_back(p.p);
        auto hull = convex_hull(xy).vertices;
        diameter[id] = max_cross_distance(hull, hull);
        extremes[id] = std::move(hull);
    }
    std::map<PairKey, double> cross;
    for (auto a = clusters.begin(); a != clusters.end(); ++a)
        for (auto b = std::next(a); b != clusters.end(); ++b)
            cross[{a->first, b->first}] = max_cross_distance(extremes[a->first], extremes[b->first]);

    auto merged_diameter = [&](const PairKey& k, double c) {
        return std::max({diameter[k.first], diameter[k.second], c});
    };

    while (!cross.empty()) {
        auto best = cross.begin();
        double best_d = merged_diameter(best->first, best->second);
        for (auto it = std::next(cross.begin()); it != cross.end(); ++it) {
            const double d = merged_diameter(it->first, it->second);
            if (d < best_d) {
                best = it;
                best_d = d;
            }
        }
        if (!(best_d <= params.diameter_min)) break;

        const auto [keep, gone] = best->first;
        absorb(clusters.at(keep), clusters.at(gone));
        clusters.erase(gone);
        diameter[keep] = best_d;
        auto& kept_extremes = extremes[keep];
        kept_extremes.insert(kept_extremes.end(), extremes[gone].begin(), extremes[gone].end());
        extremes.erase(gone);
        diameter.erase(gone);
        cross.erase(best);
        for (const auto& [other, d] : clusters) {
            if (other == keep) continue;
            auto gone_it = cross.find(key_of(gone, other));
            cross[key_of(keep, other)] = std::max(cross[key_of(keep, other)], gone_it->second);
            cross.erase(gone_it);
        }
    }
    return values_of(std::move(clusters));
}

std::vector<Destination> extract_destinations(std::span<const Stay> stays, const MergeParams& params,
                                              DestinationMethod method) {
    switch (method) {
    case DestinationMethod::geometric: return merge_geometric_similarity(stays, params);
    case DestinationMethod::optics: return optics_cluster(stays, params);
    case DestinationMethod::diameter: return merge_diameter(stays, params);
    }
    return {};
}

} // namespace goigrid
