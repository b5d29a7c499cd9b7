// Acceptance suite: one PASS/FAIL line per criterion.
//
//   goigrid_acceptance            run all criteria
//   goigrid_acceptance 3 7        run the listed criteria
//
// Exit status is 0 only when every selected criterion passes.

#include "fig1.hpp"
#include "support.hpp"

#include "goigrid/destinations.hpp"
#include "goigrid/evaluation.hpp"
#include "goigrid/io.hpp"
#include "goigrid/oracle.hpp"
#include "goigrid/pipeline.hpp"
#include "goigrid/stays.hpp"
#include "goigrid/svl.hpp"
#include "goigrid/synth.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#ifndef GOIGRID_TOOL_PATH
#define GOIGRID_TOOL_PATH "goigrid"
#endif

using namespace goigrid;
namespace fs = std::filesystem;

namespace {

// Pinned tolerances and batch settings.
constexpr int kOracleSeeds = 200;
constexpr std::size_t kOracleMaxTrajectory = 500;
constexpr double kOracleSeconds = 60.0;
constexpr int kMergeSeeds = 100;
constexpr std::size_t kMergeMaxStays = 12;
constexpr double kMergeAreaRelTol = 1e-9;
constexpr double kDisjointArea = 1e-6;
constexpr int kGapScenarios = 100;
constexpr double kInclusionExclusionRelTol = 1e-6;
constexpr int kPolygonPairs = 1000;
constexpr int kIndexInstances = 100;
constexpr std::uint64_t kBatchSeeds = 20;

// Batch-mean geometric similarity per method on seeds 1..20 of the default
// scenario, frozen from the calibration run; a regression moves these.
constexpr double kFrozenSimilarityTolerance = 1e-3;
const std::map<std::string, double> kFrozenSimilarity{
    {"proposed", 0.187550821},
    {"diameter", 0.492259152},
    {"optics", 0.411266406},
};

struct Verdict {
    bool pass = false;
    std::string detail;
};

std::string fmt(double v, int digits = 6) {
    std::ostringstream s;
    s.precision(digits);
    s << v;
    return s.str();
}

std::vector<std::uint64_t> batch_seeds() {
    std::vector<std::uint64_t> seeds;
    for (std::uint64_t s = 1; s <= kBatchSeeds; ++s) seeds.push_back(s);
    return seeds;
}

const std::vector<Scenario>& batch_scenarios() {
    static const std::vector<Scenario> scenarios = [] {
        std::vector<Scenario> out;
        for (auto seed : batch_seeds()) {
            ScenarioSpec spec;
            spec.seed = seed;
            out.push_back(generate_scenario(spec));
        }
        return out;
    }();
    return scenarios;
}

bool same_stays(const std::vector<Stay>& a, const std::vector<Stay>& b) {
    if (a.size() != b.size()) return false;
    for (std::size_t k = 0; k < a.size(); ++k)
        if (a[k].id != b[k].id || a[k].first_index != b[k].first_index || a[k].ps != b[k].ps ||
            a[k].at != b[k].at || a[k].dt != b[k].dt || !(a[k].g == b[k].g))
            return false;
    return true;
}

// 1 -------------------------------------------------------------------------------------

Verdict stay_oracle_equivalence() {
    const auto start = std::chrono::steady_clock::now();
    int disagreements = 0;
    std::size_t stays = 0;
    for (int seed = 1; seed <= kOracleSeeds; ++seed) {
        const std::size_t n = 20 + static_cast<std::size_t>(seed * 37) % (kOracleMaxTrajectory - 19);
        const auto traj = test::random_trajectory(static_cast<std::uint64_t>(seed), n);
        StayParams p;
        p.t_min = seed % 2 ? 3600 : 900;
        p.d_max = seed % 3 ? 100 : 60;
        for (auto m : {StayMethod::twc, StayMethod::reference_point, StayMethod::diameter}) {
            const auto fast = extract_stays(traj, p, m);
            stays += fast.size();
            if (!same_stays(fast, brute_force_stay_oracle(traj, p, m))) ++disagreements;
        }
    }
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return {disagreements == 0 && seconds < kOracleSeconds,
            std::to_string(kOracleSeeds) + " trajectories x 3 extractors, " + std::to_string(stays) +
                " stays, " + std::to_string(disagreements) + " disagreements, " + fmt(seconds, 3) + " s"};
}

// 2 -------------------------------------------------------------------------------------

Verdict merge_oracle_equivalence() {
    int mismatches = 0, instances = 0;
    for (int seed = 1; seed <= kMergeSeeds; ++seed) {
        ScenarioSpec spec;
        spec.seed = static_cast<std::uint64_t>(seed);
        spec.visits_per_goi = 3;
        const auto all = extract_stays_twc(generate_scenario(spec).trajectory, StayParams{});
        // A window of consecutive stays, ids kept.
        const std::size_t count = std::min(kMergeMaxStays, all.size());
        const std::size_t offset = all.size() > count ? static_cast<std::size_t>(seed) % (all.size() - count + 1) : 0;
        const std::vector<Stay> stays(all.begin() + static_cast<std::ptrdiff_t>(offset),
                                      all.begin() + static_cast<std::ptrdiff_t>(offset + count));
        for (double j : {0.0, 0.05, 0.10, 1.0}) {
            ++instances;
            const auto fast = merge_geometric_similarity_unfiltered(stays, j);
            const auto slow = brute_force_merge_oracle(stays, j);
            bool same = fast.size() == slow.size();
            for (std::size_t k = 0; same && k < fast.size(); ++k) {
                const double a = area(fast[k].geometry), b = area(slow[k].geometry);
                same = fast[k].id == slow[k].id && fast[k].stay_ids == slow[k].stay_ids &&
                       fast[k].frequency == slow[k].frequency &&
                       std::abs(a - b) <= kMergeAreaRelTol * std::max(a, b);
            }
            if (!same) ++mismatches;
        }
    }
    return {mismatches == 0, std::to_string(instances) + " instances of <= 12 stays, " + std::to_string(mismatches) +
                                 " mismatches"};
}

// 3 -------------------------------------------------------------------------------------

Verdict printed_invariants() {
    bool identity = true;
    double worst_overlap = 0.0;
    for (const auto& sc : batch_scenarios()) {
        const auto stays = extract_stays_twc(sc.trajectory, StayParams{});
        MergeParams p;
        p.f_min = 1;
        p.j_min = 1.0;
        const auto same = merge_geometric_similarity(stays, p);
        identity = identity && same.size() == stays.size();
        for (std::size_t k = 0; identity && k < same.size(); ++k)
            identity = same[k].id == stays[k].id && same[k].geometry == stays[k].g && same[k].frequency == 1;

        p.j_min = 0.0;
        const auto merged = merge_geometric_similarity(stays, p);
        for (std::size_t a = 0; a < merged.size(); ++a)
            for (std::size_t b = a + 1; b < merged.size(); ++b)
                worst_overlap = std::max(worst_overlap, intersection_area(merged[a].geometry, merged[b].geometry));
    }

    std::size_t twc_singles = 0, baseline_singles = 0;
    for (int seed = 1; seed <= kGapScenarios; ++seed) {
        ScenarioSpec spec;
        spec.seed = static_cast<std::uint64_t>(1000 + seed);
        spec.gap_probability = 0.05;
        spec.visits_per_goi = 3;
        const auto traj = generate_scenario(spec).trajectory;
        twc_singles += stay_stats(extract_stays_twc(traj, StayParams{})).single_point_count;
        baseline_singles += stay_stats(extract_stays_reference_point(traj, StayParams{})).single_point_count;
        baseline_singles += stay_stats(extract_stays_diameter(traj, StayParams{})).single_point_count;
    }
    const bool disjoint = worst_overlap < kDisjointArea;
    return {identity && disjoint && baseline_singles == 0,
            std::string("(a) identity ") + (identity ? "holds" : "broken") + "; (b) max overlap " +
                fmt(worst_overlap) + " m2; (c) single-fix stays twc " + std::to_string(twc_singles) +
                ", baselines " + std::to_string(baseline_singles)};
}

// 4 -------------------------------------------------------------------------------------

Verdict partition_validity() {
    int grids = 0, failures = 0;
    double worst_overlap = 0.0, worst_uncovered = 0.0;
    for (const auto& sc : batch_scenarios()) {
        for (const auto& [name, base] : standard_methods(PipelineConfig{})) {
            for (Metric metric : {Metric::gs, Metric::pcs}) {
                PipelineConfig config = base;
                config.metric = metric;
                config.merge.f_min = 1;
                const auto r = run_pipeline(sc.trajectory, config);
                if (r.destinations.empty()) continue;
                ++grids;
                worst_overlap = std::max(worst_overlap, r.report.max_overlap_area);
                worst_uncovered = std::max(worst_uncovered, r.report.uncovered_area);
                if (!r.report.passes() || r.report.points_checked != sc.trajectory.size()) ++failures;
            }
        }
    }
    return {failures == 0 && grids > 0, std::to_string(grids) + " grids, " + std::to_string(failures) +
                                            " invalid; max overlap " + fmt(worst_overlap) + " m2, max uncovered " +
                                            fmt(worst_uncovered) + " m2"};
}

// 5 -------------------------------------------------------------------------------------

double mean_destinations(const PipelineConfig& config) {
    double total = 0.0;
    for (const auto& sc : batch_scenarios()) {
        const auto stays = extract_stays(sc.trajectory, config.stay, config.stay_method);
        total += static_cast<double>(extract_destinations(stays, config.merge, config.destination_method).size());
    }
    return total / static_cast<double>(batch_scenarios().size());
}

Verdict direction_of_effect() {
    const auto methods = standard_methods(PipelineConfig{});
    std::vector<double> by_j, by_pts, by_diameter;
    for (double j : {0.0, 0.05, 0.10}) {
        PipelineConfig c = methods[0].second;
        c.merge.j_min = j;
        c.merge.f_min = 1;
        by_j.push_back(mean_destinations(c));
    }
    for (int pts : {3, 6, 9}) {
        PipelineConfig c = methods[2].second;
        c.merge.min_pts = pts;
        by_pts.push_back(mean_destinations(c));
    }
    for (double d : {200.0, 300.0, 400.0}) {
        PipelineConfig c = methods[1].second;
        c.merge.diameter_min = d;
        by_diameter.push_back(mean_destinations(c));
    }
    const bool j_ok = std::is_sorted(by_j.begin(), by_j.end());
    const bool pts_ok = std::is_sorted(by_pts.rbegin(), by_pts.rend());
    const bool d_ok = std::is_sorted(by_diameter.rbegin(), by_diameter.rend());
    auto list = [](const std::vector<double>& v) {
        std::string s;
        for (double x : v) s += (s.empty() ? "" : " ") + fmt(x, 4);
        return s;
    };
    return {j_ok && pts_ok && d_ok, "j_min 0/0.05/0.10: " + list(by_j) + "; min_pts 3/6/9: " + list(by_pts) +
                                        "; diameter_min 200/300/400: " + list(by_diameter)};
}

// 6 -------------------------------------------------------------------------------------

Verdict method_ranking() {
    const auto seeds = batch_seeds();
    const auto methods = standard_methods(PipelineConfig{});
    const auto report = evaluate_batch(ScenarioSpec{}, seeds, methods);
    std::map<std::string, double> mean;
    std::string detail;
    bool frozen = true;
    for (const auto& m : report.methods) {
        mean[m.name] = m.mean_similarity();
        detail += m.name + " " + fmt(mean[m.name], 9) + " (" + fmt(m.mean_destinations(), 3) + " destinations); ";
        frozen = frozen && std::abs(mean[m.name] - kFrozenSimilarity.at(m.name)) <= kFrozenSimilarityTolerance;
    }
    const bool ranked = mean["proposed"] > mean["diameter"] && mean["proposed"] > mean["optics"];
    detail += std::string("ranking ") + (ranked ? "holds" : "does not hold") + ", regression bounds " +
              (frozen ? "hold" : "moved");
    return {ranked && frozen, detail};
}

// 7 -------------------------------------------------------------------------------------

Verdict contested_fix() {
    const auto fig = test::fig1_instance();
    const FinalGrid grid = partition_trajectory(fig.trajectory, fig.destinations, 5.0, Metric::gs);
    const auto inter = label_by_intersection(fig.trajectory, grid);
    const auto nnq = label_by_nnq(fig.trajectory, fig.destinations);
    const PlanarPoint contested = fig.trajectory[test::Fig1::kContested].p;

    int containing = -1;
    for (const auto& d : fig.destinations)
        if (covers(d.geometry, contested)) containing = d.id;
    int nearest = -1;
    double best = 0.0;
    for (const auto& d : fig.destinations) {
        const double dist = euclidean_distance(contested, d.geometry.centroid());
        if (nearest < 0 || dist < best) {
            best = dist;
            nearest = d.id;
        }
    }
    std::vector<std::size_t> differing;
    for (std::size_t i = 0; i < inter.size(); ++i)
        if (inter[i].label != nnq[i].label) differing.push_back(i);
    const bool ok = containing >= 0 && containing != nearest &&
                    inter[test::Fig1::kContested].label == containing &&
                    nnq[test::Fig1::kContested].label == nearest &&
                    differing == std::vector<std::size_t>{test::Fig1::kContested};
    std::string seq_i, seq_n;
    for (std::size_t i = 0; i < inter.size(); ++i) {
        seq_i += (i ? " " : "") + std::to_string(inter[i].label);
        seq_n += (i ? " " : "") + std::to_string(nnq[i].label);
    }
    return {ok, "intersection [" + seq_i + "], nnq [" + seq_n + "], " + std::to_string(differing.size()) +
                    " differing position(s)"};
}

// 8 -------------------------------------------------------------------------------------

Region random_kernel_polygon(std::mt19937_64& rng, int kind) {
    std::uniform_real_distribution<double> u(-60.0, 60.0), s(1.0, 60.0);
    switch (kind % 3) {
    case 0: return test::random_star_polygon(rng);
    case 1: {
        const double x = u(rng), y = u(rng);
        return test::box(x, y, x + s(rng), y + s(rng));
    }
    default: {
        std::vector<PlanarPoint> pts(2 + static_cast<std::size_t>(s(rng)) % 10);
        for (auto& p : pts) p = {u(rng), u(rng)};
        return buffer(convex_hull(pts), 10.0);
    }
    }
}

Verdict kernel_numerics() {
    std::mt19937_64 rng(2024);
    double worst = 0.0;
    int violations = 0;
    for (int k = 0; k < kPolygonPairs; ++k) {
        const Region a = random_kernel_polygon(rng, k), b = random_kernel_polygon(rng, k / 3);
        const double lhs = area(a) + area(b);
        const double rhs = area(unite(a, b)) + area(intersection(a, b));
        const double rel = std::abs(lhs - rhs) / lhs;
        worst = std::max(worst, rel);
        if (rel > kInclusionExclusionRelTol) ++violations;
    }
    int index_mismatches = 0;
    for (int inst = 0; inst < kIndexInstances; ++inst) {
        std::vector<std::pair<SpatialIndex::Id, Region>> entries;
        for (int k = 0; k < 60; ++k) entries.emplace_back(k, random_kernel_polygon(rng, k));
        const SpatialIndex index(entries);
        const Region probe = random_kernel_polygon(rng, inst);
        std::vector<SpatialIndex::Id> brute;
        for (const auto& [id, r] : entries)
            if (intersects(r, probe)) brute.push_back(id);
        if (index_query(index, probe) != brute) ++index_mismatches;
    }
    return {violations == 0 && index_mismatches == 0,
            std::to_string(kPolygonPairs) + " pairs, worst relative error " + fmt(worst, 3) + "; " +
                std::to_string(kIndexInstances) + " index instances, " + std::to_string(index_mismatches) +
                " mismatches"};
}

// 9 -------------------------------------------------------------------------------------

Verdict determinism() {
    const fs::path root = fs::temp_directory_path() / "goigrid_acceptance_determinism";
    fs::remove_all(root);
    fs::create_directories(root);
    for (const char* run : {"a", "b"}) {
        const std::string cmd = std::string("\"") + GOIGRID_TOOL_PATH + "\" pipeline --seed 7 --out \"" +
                                (root / run).string() + "\" > /dev/null";
        if (std::system(cmd.c_str()) != 0) return {false, std::string("pipeline run ") + run + " failed"};
    }
    int files = 0, differing = 0;
    for (const auto& entry : fs::directory_iterator(root / "a")) {
        ++files;
        const fs::path twin = root / "b" / entry.path().filename();
        if (!fs::exists(twin) || read_file(entry.path().string()) != read_file(twin.string())) ++differing;
    }
    int extra = 0;
    for (const auto& entry : fs::directory_iterator(root / "b"))
        if (!fs::exists(root / "a" / entry.path().filename())) ++extra;
    fs::remove_all(root);
    return {files > 0 && differing == 0 && extra == 0,
            std::to_string(files) + " artifacts compared, " + std::to_string(differing + extra) + " differ"};
}

struct Criterion {
    int number;
    const char* title;
    std::function<Verdict()> run;
};

const std::vector<Criterion>& criteria() {
    static const std::vector<Criterion> all{
        {1, "stay extraction matches brute-force simulators", stay_oracle_equivalence},
        {2, "geometric merging matches brute-force agglomeration", merge_oracle_equivalence},
        {3, "identity, disjointness and single-fix invariants", printed_invariants},
        {4, "final grids are valid partitions", partition_validity},
        {5, "destination counts move in the expected direction", direction_of_effect},
        {6, "proposed pipeline ranks first by geometric similarity", method_ranking},
        {7, "intersection and nearest-centroid labels split at the contested fix", contested_fix},
        {8, "geometry kernel numerics and index queries", kernel_numerics},
        {9, "pipeline output is byte-identical across runs", determinism},
    };
    return all;
}

} // namespace

int main(int argc, char** argv) {
    std::vector<int> selected;
    for (int k = 1; k < argc; ++k) {
        char* end = nullptr;
        const long v = std::strtol(argv[k], &end, 10);
        if (*end != '\0' || v < 1 || v > static_cast<long>(criteria().size())) {
            std::fprintf(stderr, "usage: %s [criterion 1-%zu ...]\n", argv[0], criteria().size());
            return 2;
        }
        selected.push_back(static_cast<int>(v));
    }
    if (selected.empty())
        for (const auto& c : criteria()) selected.push_back(c.number);

    bool all = true;
    for (int n : selected) {
        const auto& c = criteria()[static_cast<std::size_t>(n - 1)];
        Verdict v;
        try {
            v = c.run();
        } catch (const std::exception& e) {
            v = {false, std::string("raised: ") + e.what()};
        }
        all = all && v.pass;
        std::printf("criterion %d %s: %s (%s)\n", c.number, v.pass ? "PASS" : "FAIL", c.title, v.detail.c_str());
        std::fflush(stdout);
    }
    return all ? 0 : 1;
}
