#pragma once

#include "goigrid/config.hpp"
#include "goigrid/destinations.hpp"
#include "goigrid/partition.hpp"
#include "goigrid/stays.hpp"
#include "goigrid/svl.hpp"
#include "goigrid/synth.hpp"
#include "goigrid/trajectory.hpp"

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace goigrid {

/// Final grid over the trajectory's bounding rectangle.
FinalGrid partition_trajectory(const Trajectory& traj, std::span<const Destination> destinations,
                               double cell_size, Metric metric);

struct PipelineResult {
    std::vector<Stay> stays;
    std::vector<Destination> destinations;
    FinalGrid grid;                 ///< empty when no destination survived
    std::vector<SvlEntry> svl;      ///< empty when no destination survived
    PartitionReport report;
};

/// Stays, destinations, final grid and SVL for one trajectory.
PipelineResult run_pipeline(const Trajectory& traj, const PipelineConfig& config);

/// GOI regions a configuration estimates for a trajectory; empty when no
/// destination survives.
std::vector<Region> estimate_gois(const Trajectory& traj, const PipelineConfig& config);

/// The proposed pipeline and the two baselines it is compared against, each
/// derived from `base`: (twc, geometric), (diameter, diameter), (refpoint, optics).
std::vector<std::pair<std::string, PipelineConfig>> standard_methods(const PipelineConfig& base);

struct MethodScore {
    std::string name;
    PipelineConfig config;
    std::vector<double> similarity;    ///< per seed
    std::vector<std::size_t> stays;    ///< per seed
    std::vector<std::size_t> single_point_stays;
    std::vector<std::size_t> destinations;

    double mean_similarity() const;
    double mean_destinations() const;
};

struct BatchReport {
    std::vector<std::uint64_t> seeds;
    std::vector<MethodScore> methods;
};

/// Generates one scenario per seed (seeds spread over a bounded thread pool) and scores every
/// method on it. Results do not depend on thread scheduling.
BatchReport evaluate_batch(const ScenarioSpec& base, std::span<const std::uint64_t> seeds,
                           std::span<const std::pair<std::string, PipelineConfig>> methods);

} // namespace goigrid
