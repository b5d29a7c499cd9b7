#include "goigrid/pipeline.hpp"

#include "goigrid/evaluation.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <thread>

namespace goigrid {

FinalGrid partition_trajectory(const Trajectory& traj, std::span<const Destination> destinations,
                               double cell_size, Metric metric) {
    const MicroGrid micro = build_micro_grid(mbr(traj), cell_size);
    return build_final_grid(assign_cells(micro, destinations, metric), micro);
}

PipelineResult run_pipeline(const Trajectory& traj, const PipelineConfig& config) {
    config.validate();
    PipelineResult r;
    r.stays = extract_stays(traj, config.stay, config.stay_method);
    r.destinations = extract_destinations(r.stays, config.merge, config.destination_method);
    if (r.destinations.empty()) return r;
    r.grid = partition_trajectory(traj, r.destinations, config.cell_size, config.metric);
    r.report = validate_partition(r.grid, traj);
    r.svl = config.strategy == LabelStrategy::intersection
                ? label_by_intersection(traj, r.grid, config.collapse)
                : label_by_nnq(traj, r.destinations, config.collapse);
    return r;
}

std::vector<Region> estimate_gois(const Trajectory& traj, const PipelineConfig& config) {
    config.validate();
    const auto stays = extract_stays(traj, config.stay, config.stay_method);
    const auto destinations = extract_destinations(stays, config.merge, config.destination_method);
    if (destinations.empty()) return {};
    return goi_regions(partition_trajectory(traj, destinations, config.cell_size, config.metric));
}

std::vector<std::pair<std::string, PipelineConfig>> standard_methods(const PipelineConfig& base) {
    PipelineConfig proposed = base;
    proposed.stay_method = StayMethod::twc;
    proposed.destination_method = DestinationMethod::geometric;
    PipelineConfig diameter = base;
    diameter.stay_method = StayMethod::diameter;
    diameter.destination_method = DestinationMethod::diameter;
    PipelineConfig optics = base;
    optics.stay_method = StayMethod::reference_point;
    optics.destination_method = DestinationMethod::optics;
    return {{"proposed", proposed}, {"diameter", diameter}, {"optics", optics}};
}

namespace {

double mean(const auto& values) {
    if (values.empty()) return 0.0;
    double sum = 0.0;
    for (auto v : values) sum += static_cast<double>(v);
    return sum / static_cast<double>(values.size());
}

struct SeedOutcome {
    double similarity = 0.0;
    std::size_t stays = 0;
    std::size_t single_point_stays = 0;
    std::size_t destinations = 0;
};

std::vector<SeedOutcome> score_seed(const ScenarioSpec& base, std::uint64_t seed,
                                    std::span<const std::pair<std::string, PipelineConfig>> methods) {
    ScenarioSpec spec = base;
    spec.seed = seed;
    const Scenario scenario = generate_scenario(spec);
    std::vector<SeedOutcome> out;
    for (const auto& [name, config] : methods) {
        SeedOutcome o;
        const auto stays = extract_stays(scenario.trajectory, config.stay, config.stay_method);
        const auto dests = extract_destinations(stays, config.merge, config.destination_method);
        const auto st = stay_stats(stays);
        o.stays = st.count;
        o.single_point_stays = st.single_point_count;
        o.destinations = dests.size();
        if (!dests.empty()) {
            const auto gois = goi_regions(
                partition_trajectory(scenario.trajectory, dests, config.cell_size, config.metric));
            o.similarity = geometric_similarity(scenario.truth, gois);
        }
        out.push_back(o);
    }
    return out;
}

} // namespace

double MethodScore::mean_similarity() const { return mean(similarity); }
double MethodScore::mean_destinations() const { return mean(destinations); }

BatchReport evaluate_batch(const ScenarioSpec& base, std::span<const std::uint64_t> seeds,
                           std::span<const std::pair<std::string, PipelineConfig>> methods) {
    for (const auto& m : methods) m.second.validate();
    // Workers claim seeds by index and write into per-seed slots, so the
    // report is assembled in seed order whatever the interleaving.
    std::vector<std::vector<SeedOutcome>> outcomes(seeds.size());
    std::vector<std::exception_ptr> failures(seeds.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t k; (k = next.fetch_add(1)) < seeds.size();) {
            try {
                outcomes[k] = score_seed(base, seeds[k], methods);
            } catch (...) {
                failures[k] = std::current_exception();
            }
        }
    };
    const std::size_t threads =
        std::min<std::size_t>(seeds.size(), std::max(1u, std::thread::hardware_concurrency()));
    std::vector<std::thread> pool;
    for (std::size_t t = 1; t < threads; ++t) pool.emplace_back(worker);
    worker();
    for (auto& t : pool) t.join();
    for (const auto& f : failures)
        if (f) std::rethrow_exception(f);

    BatchReport report;
    report.seeds.assign(seeds.begin(), seeds.end());
    for (const auto& [name, config] : methods) report.methods.push_back({name, config, {}, {}, {}, {}});
    for (const auto& outcome : outcomes) {
        for (std::size_t m = 0; m < outcome.size(); ++m) {
            auto& score = report.methods[m];
            score.similarity.push_back(outcome[m].similarity);
            score.stays.push_back(outcome[m].stays);
            score.single_point_stays.push_back(outcome[m].single_point_stays);
            score.destinations.push_back(outcome[m].destinations);
        }
    }
    return report;
}

} // namespace goigrid
