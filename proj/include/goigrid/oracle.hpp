#pragma once

#include "goigrid/destinations.hpp"
#include "goigrid/stays.hpp"

#include <vector>

namespace goigrid {

inline constexpr std::size_t kOracleMaxPoints = 2000;

/// Naive re-implementation of the three stay extractors for cross-checking:
/// explicit working sets, centroids and diameters recomputed from scratch at
/// every step. Refuses trajectories longer than kOracleMaxPoints.
std::vector<Stay> brute_force_stay_oracle(const Trajectory& traj, const StayParams& params,
                                          StayMethod method);

inline constexpr std::size_t kMergeOracleMaxStays = 200;

/// Geometric-similarity agglomeration without an index or cached scores: every
/// round re-measures all pairs of current clusters. Unfiltered by frequency.
std::vector<Destination> brute_force_merge_oracle(std::span<const Stay> stays, double j_min);

} // namespace goigrid
