#pragma once

#include "goigrid/destinations.hpp"
#include "goigrid/geometry.hpp"
#include "goigrid/partition.hpp"
#include "goigrid/stays.hpp"

#include <cstddef>
#include <map>
#include <span>
#include <utility>
#include <vector>

namespace goigrid {

/// Known geometries of interest.
struct GroundTruth {
    std::vector<std::pair<int, Region>> gois;

    void validate() const;
};

/// Mean over true GOIs of the summed Jaccard similarity against every estimate:
/// (1/n) * sum_i sum_j |r_i ∩ g_j| / |r_i ∪ g_j|.
double geometric_similarity(const GroundTruth& truth, std::span<const Region> estimated);

/// GOI regions of a final grid, ascending id.
std::vector<Region> goi_regions(const FinalGrid& grid);

struct StayStats {
    std::size_t count = 0;
    std::size_t single_point_count = 0;

    friend bool operator==(const StayStats&, const StayStats&) = default;
};

StayStats stay_stats(std::span<const Stay> stays);

struct DestinationStats {
    std::size_t count = 0;
    std::map<int, std::size_t> frequency_histogram; ///< frequency -> destinations with it

    friend bool operator==(const DestinationStats&, const DestinationStats&) = default;
};

DestinationStats destination_stats(std::span<const Destination> destinations);

} // namespace goigrid
