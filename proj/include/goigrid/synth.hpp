#pragma once

#include "goigrid/evaluation.hpp"
#include "goigrid/trajectory.hpp"

#include <cstdint>
#include <map>
#include <random>
#include <string>
#include <vector>

namespace goigrid {

/// Parameters of a synthetic single-object scenario. Lengths in meters, times in seconds.
struct ScenarioSpec {
    int goi_count = 5;
    double goi_size_min = 50.0;
    double goi_size_max = 150.0;
    double area_size = 800.0;       ///< GOIs are placed inside [0, area_size]^2
    double goi_spacing = 20.0;      ///< minimum gap between GOI rectangles
    int visits_per_goi = 8;
    std::int64_t dwell_min = 7200;
    std::int64_t dwell_max = 10800;
    double walk_step = 5.0;         ///< random-walk step sigma per sampling interval
    double speed = 10.0;            ///< travel speed, m/s
    std::int64_t sample_interval = 60;
    double gap_probability = 0.0;   ///< chance per fix that the next fix is delayed by a gap
    std::int64_t gap_min = 1800;
    std::int64_t gap_max = 7200;
    double noise_sigma = 10.0;      ///< per-axis Gaussian GPS noise
    LatLon origin{61.2181, -149.9003};
    Timestamp start_time = 1262304000;
    std::uint64_t seed = 1;
    int placement_attempts = 1000;

    void validate() const;
};

/// Reads `key=value` overrides onto a spec. Unknown keys are rejected.
ScenarioSpec apply_scenario_config(ScenarioSpec spec, const std::map<std::string, std::string>& kv);
std::map<std::string, std::string> scenario_to_config(const ScenarioSpec& spec);

struct Visit {
    int goi = 0;
    Timestamp arrive = 0;
    Timestamp depart = 0;
};

struct Scenario {
    Trajectory trajectory;   ///< planar, in the frame of spec.origin
    GroundTruth truth;
    std::vector<Visit> visits;
};

/// Deterministic for a given spec: every random draw comes from a seeded
/// stream per component (placement, schedule, sampling, walk, noise).
Scenario generate_scenario(const ScenarioSpec& spec);

/// mt19937_64 seeded through std::seed_seq with explicit, platform-independent
/// transforms for uniform and normal variates.
class RandomStream {
public:
    RandomStream(std::uint64_t seed, std::uint32_t component);

    double uniform();                       ///< [0, 1)
    double uniform(double lo, double hi);
    std::int64_t uniform_int(std::int64_t lo, std::int64_t hi); ///< inclusive
    double normal();                        ///< standard normal, Box-Muller

private:
    std::mt19937_64 engine_;
};

} // namespace goigrid
