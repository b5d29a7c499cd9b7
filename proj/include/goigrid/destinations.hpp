#pragma once

#include "goigrid/geometry.hpp"
#include "goigrid/stays.hpp"

#include <limits>
#include <span>
#include <string_view>
#include <vector>

namespace goigrid {

struct MergeParams {
    double j_min = 0.10;          ///< Jaccard threshold, merge while similarity exceeds it
    int f_min = 6;                ///< minimum visit frequency kept
    double eps = 100.0;           ///< OPTICS neighbourhood radius, meters
    int min_pts = 6;              ///< OPTICS density threshold (point itself included)
    double diameter_min = 200.0;  ///< diameter merge threshold, meters

    void validate() const;
};

struct Destination {
    int id = 0;
    Region geometry;
    std::vector<TrackPoint> points;
    int frequency = 1;
    std::vector<int> stay_ids; ///< source stays, ascending
};

enum class DestinationMethod { geometric, optics, diameter };

std::string_view to_string(DestinationMethod m);
DestinationMethod parse_destination_method(std::string_view name);

/// Agglomerative merging by geometric similarity.
///
/// Each round merges the globally most similar pair of intersecting clusters
/// while its Jaccard similarity exceeds j_min (ties: smaller (min id, max id)).
/// The survivor keeps the smaller id. Clusters visited fewer than f_min times
/// are dropped at the end.
std::vector<Destination> merge_geometric_similarity(std::span<const Stay> stays,
                                                    const MergeParams& params);

/// Same agglomeration without the final frequency filter.
std::vector<Destination> merge_geometric_similarity_unfiltered(std::span<const Stay> stays,
                                                               double j_min);

struct OpticsOrdering {
    static constexpr double kUndefined = std::numeric_limits<double>::infinity();

    std::vector<std::size_t> order;     ///< visit order of input indices
    std::vector<double> reachability;   ///< per input index; kUndefined when unreachable
    std::vector<double> core_distance;  ///< per input index; kUndefined for non-core points
};

OpticsOrdering optics_ordering(std::span<const PlanarPoint> points, double eps, int min_pts);

/// Flat cut of an ordering at `eps`: cluster label per input index, -1 for noise.
std::vector<int> extract_clusters(const OpticsOrdering& ordering, double eps);

/// OPTICS over stay centroids; noise stays are discarded.
std::vector<Destination> optics_cluster(std::span<const Stay> stays, const MergeParams& params);

/// Agglomerative merging of the pair whose merged point set has the smallest
/// diameter, while that diameter is at most diameter_min.
std::vector<Destination> merge_diameter(std::span<const Stay> stays, const MergeParams& params);

std::vector<Destination> extract_destinations(std::span<const Stay> stays, const MergeParams& params,
                                              DestinationMethod method);

/// A destination made of a single stay.
Destination destination_from_stay(const Stay& stay);
/// Folds `other` into `into`: points appended, geometries united, frequencies summed.
void absorb(Destination& into, const Destination& other);

} // namespace goigrid
