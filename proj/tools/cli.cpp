#include "cli.hpp"

#include "goigrid/config.hpp"
#include "goigrid/error.hpp"
#include "goigrid/evaluation.hpp"
#include "goigrid/format.hpp"
#include "goigrid/io.hpp"
#include "goigrid/pipeline.hpp"
#include "goigrid/synth.hpp"

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <filesystem>
#include <optional>
#include <ostream>
#include <sstream>

namespace goigrid::cli {

namespace {

using nlohmann::json;
namespace fs = std::filesystem;

json num(double v) { return round_significant(v); }

json config_json(const PipelineConfig& c) {
    json out = json::object();
    for (const auto& [k, v] : c.to_key_values()) out[k] = v;
    return out;
}

json origin_json(const LatLon& o) { return json::array({num(o.lat), num(o.lon)}); }

/// Writes `bytes` to `path` and its provenance record to `path.meta.json`.
void emit(const std::string& path, std::string_view bytes, json meta) {
    write_file(path, bytes);
    meta["tool"] = std::string(kToolName);
    meta["version"] = std::string(kToolVersion);
    meta["output_digest"] = sha256_hex(bytes);
    write_file(path + ".meta.json", meta.dump(2) + "\n");
}

json base_meta(const std::string& command, const PipelineConfig& config) {
    return {{"command", command}, {"parameters", config_json(config)}, {"inputs", json::object()}};
}

std::string sibling(const std::string& path, const char* extension) {
    return fs::path(path).replace_extension(extension).string();
}

LatLon parse_origin(const std::string& text) {
    const auto comma = text.find(',');
    try {
        if (comma != std::string::npos) {
            std::size_t a = 0, b = 0;
            const std::string lat = text.substr(0, comma), lon = text.substr(comma + 1);
            const LatLon o{std::stod(lat, &a), std::stod(lon, &b)};
            if (a == lat.size() && b == lon.size() && valid_lat_lon(o)) return o;
        }
    } catch (const std::exception&) {
    }
    throw InvalidInput("--origin expects 'lat,lon' in degrees, got '" + text + "'");
}

std::vector<std::uint64_t> parse_seed_list(const std::string& text) {
    std::vector<std::uint64_t> seeds;
    std::stringstream ss(text);
    try {
        for (std::string part; std::getline(ss, part, ',');) {
            const auto dash = part.find('-');
            if (dash == std::string::npos) {
                seeds.push_back(std::stoull(part));
                continue;
            }
            const auto lo = std::stoull(part.substr(0, dash));
            const auto hi = std::stoull(part.substr(dash + 1));
            if (hi < lo) throw std::invalid_argument(part);
            for (auto s = lo; s <= hi; ++s) seeds.push_back(s);
        }
    } catch (const std::logic_error&) {
        throw InvalidInput("--seeds expects a list like '1-20' or '1,4,9', got '" + text + "'");
    }
    if (seeds.empty()) throw InvalidInput("--seeds is empty");
    return seeds;
}

struct LoadedTrajectory {
    Trajectory trajectory;
    std::string digest;
};

LoadedTrajectory load_trajectory(const std::string& path, const std::optional<LatLon>& origin) {
    const std::string bytes = read_file(path);
    std::istringstream in(bytes);
    const auto records = read_records_csv(in);
    return {origin ? ingest(records, *origin) : ingest(records), sha256_hex(bytes)};
}

void require_digest(const std::string& expected, const std::string& actual, const std::string& artifact) {
    if (expected != actual)
        throw StageMismatch(artifact + " was built from trajectory " + expected + " but the given trajectory is " +
                                actual,
                            expected, actual);
}

// Stages --------------------------------------------------------------------------------

std::vector<std::string> extract_stays_stage(const std::string& in, const std::optional<LatLon>& origin,
                                             const PipelineConfig& config, const std::string& out) {
    const auto loaded = load_trajectory(in, origin);
    TwcStats stats;
    StaysArtifact a{{"stays", loaded.trajectory.origin(), loaded.digest}, config.stay_method, {}};
    a.stays = config.stay_method == StayMethod::twc ? extract_stays_twc(loaded.trajectory, config.stay, &stats)
                                                    : extract_stays(loaded.trajectory, config.stay, config.stay_method);
    json meta = base_meta("extract-stays", config);
    meta["inputs"]["trajectory"] = loaded.digest;
    meta["trajectory_digest"] = loaded.digest;
    meta["origin"] = origin_json(loaded.trajectory.origin());
    const auto st = stay_stats(a.stays);
    meta["stats"] = {{"count", st.count}, {"single_point_count", st.single_point_count}};
    if (config.stay_method == StayMethod::twc)
        meta["stats"]["out_of_radius_admissions"] = stats.out_of_radius_admissions;

    const std::string manifest = sibling(out, ".csv");
    emit(out, stays_to_geojson(a), meta);
    emit(manifest, stays_to_csv(a.stays), meta);
    return {out, manifest};
}

std::vector<std::string> extract_destinations_stage(const std::string& in, const PipelineConfig& config,
                                                    const std::string& out) {
    const std::string bytes = read_file(in);
    const auto stays = stays_from_geojson(bytes);
    DestinationsArtifact a{{"destinations", stays.header.origin, stays.header.trajectory_digest},
                           config.destination_method, config.merge, {}};
    a.destinations = extract_destinations(stays.stays, config.merge, config.destination_method);
    json meta = base_meta("extract-destinations", config);
    meta["inputs"]["stays"] = sha256_hex(bytes);
    meta["trajectory_digest"] = a.header.trajectory_digest;
    meta["origin"] = origin_json(a.header.origin);
    const auto ds = destination_stats(a.destinations);
    json hist = json::object();
    for (const auto& [f, n] : ds.frequency_histogram) hist[std::to_string(f)] = n;
    meta["stats"] = {{"count", ds.count}, {"frequency_histogram", hist}};
    emit(out, destinations_to_geojson(a), meta);
    return {out};
}

std::vector<std::string> partition_stage(const std::string& destinations_path, const std::string& traj_path,
                                         const PipelineConfig& config, const std::string& out) {
    const std::string bytes = read_file(destinations_path);
    const auto dests = destinations_from_geojson(bytes);
    const auto loaded = load_trajectory(traj_path, dests.header.origin);
    require_digest(dests.header.trajectory_digest, loaded.digest, "destinations");

    GridArtifact a{{"grid", dests.header.origin, loaded.digest}, config.cell_size, config.metric, {}};
    a.grid = partition_trajectory(loaded.trajectory, dests.destinations, config.cell_size, config.metric);
    const auto report = validate_partition(a.grid, loaded.trajectory);

    json meta = base_meta("partition", config);
    meta["inputs"]["destinations"] = sha256_hex(bytes);
    meta["inputs"]["trajectory"] = loaded.digest;
    meta["trajectory_digest"] = loaded.digest;
    meta["origin"] = origin_json(a.header.origin);
    meta["cell_size"] = num(config.cell_size);
    meta["metric"] = std::string(to_string(config.metric));
    meta["label_namespace"] =
        "goi cells carry the id of their source destination; filler cells are numbered from the largest "
        "destination id plus one in row-major micro-cell order";
    meta["validation"] = {{"max_overlap_area", num(report.max_overlap_area)},
                          {"uncovered_area", num(report.uncovered_area)},
                          {"points_checked", report.points_checked},
                          {"points_not_in_one_cell", report.points_not_in_one_cell},
                          {"passes", report.passes()}};
    emit(out, grid_to_geojson(a), meta);
    if (!report.passes()) throw Error("final grid failed partition validation; see " + out + ".meta.json",
                                      "invalid_partition");
    return {out};
}

std::vector<std::string> label_stage(const std::string& traj_path, const std::string& grid_path,
                                     const std::string& destinations_path, const PipelineConfig& config,
                                     const std::string& out) {
    json meta = base_meta("label", config);
    std::vector<SvlEntry> svl;
    if (config.strategy == LabelStrategy::intersection) {
        if (grid_path.empty()) throw InvalidInput("intersection labelling needs --grid");
        const std::string bytes = read_file(grid_path);
        const auto grid = grid_from_geojson(bytes);
        const auto loaded = load_trajectory(traj_path, grid.header.origin);
        require_digest(grid.header.trajectory_digest, loaded.digest, "grid");
        svl = label_by_intersection(loaded.trajectory, grid.grid, config.collapse);
        meta["inputs"]["grid"] = sha256_hex(bytes);
        meta["inputs"]["trajectory"] = loaded.digest;
        meta["trajectory_digest"] = loaded.digest;
    } else {
        if (destinations_path.empty()) throw InvalidInput("nnq labelling needs --destinations");
        const std::string bytes = read_file(destinations_path);
        const auto dests = destinations_from_geojson(bytes);
        const auto loaded = load_trajectory(traj_path, dests.header.origin);
        require_digest(dests.header.trajectory_digest, loaded.digest, "destinations");
        svl = label_by_nnq(loaded.trajectory, dests.destinations, config.collapse);
        meta["inputs"]["destinations"] = sha256_hex(bytes);
        meta["inputs"]["trajectory"] = loaded.digest;
        meta["trajectory_digest"] = loaded.digest;
    }
    meta["entries"] = svl.size();
    const std::string jsonl = sibling(out, ".jsonl");
    emit(out, svl_to_csv(svl), meta);
    emit(jsonl, svl_to_jsonl(svl), meta);
    return {out, jsonl};
}

/// Truth regions re-expressed around `origin`.
GroundTruth reproject(const TruthArtifact& truth, const LatLon& origin) {
    if (truth.header.origin == origin) return truth.truth;
    GroundTruth out;
    for (const auto& [id, region] : truth.truth.gois) {
        MultiPolygon mp = region.polygons();
        for (auto& poly : mp) {
            auto move = [&](Ring& ring) {
                for (auto& p : ring) p = project(unproject(p, truth.header.origin), origin);
            };
            move(poly.outer());
            for (auto& hole : poly.inners()) move(hole);
        }
        out.gois.emplace_back(id, Region(std::move(mp)));
    }
    return out;
}

struct EvaluateInputs {
    std::string truth, grid, destinations, stays;
    std::string seeds, scenario;
};

std::vector<std::string> evaluate_stage(const EvaluateInputs& in, const PipelineConfig& config,
                                        const std::string& out) {
    json report{{"tool", std::string(kToolName)}, {"version", std::string(kToolVersion)},
                {"parameters", config_json(config)}};
    json meta = base_meta("evaluate", config);

    if (!in.seeds.empty()) {
        ScenarioSpec spec;
        if (!in.scenario.empty()) {
            const std::string bytes = read_file(in.scenario);
            std::istringstream s(bytes);
            spec = apply_scenario_config(spec, read_key_values(s));
            meta["inputs"]["scenario"] = sha256_hex(bytes);
        }
        const auto seeds = parse_seed_list(in.seeds);
        const auto methods = standard_methods(config);
        const auto batch = evaluate_batch(spec, seeds, methods);
        json scenario = json::object();
        for (const auto& [k, v] : scenario_to_config(spec))
            if (k != "seed") scenario[k] = v;
        report["scenario"] = scenario;
        report["seeds"] = batch.seeds;
        report["methods"] = json::array();
        for (const auto& m : batch.methods) {
            json sims = json::array();
            for (double s : m.similarity) sims.push_back(num(s));
            report["methods"].push_back({{"name", m.name},
                                         {"stay_method", std::string(to_string(m.config.stay_method))},
                                         {"destination_method",
                                          std::string(to_string(m.config.destination_method))},
                                         {"mean_similarity", num(m.mean_similarity())},
                                         {"similarity", sims},
                                         {"mean_destinations", num(m.mean_destinations())},
                                         {"destinations", m.destinations},
                                         {"stays", m.stays},
                                         {"single_point_stays", m.single_point_stays}});
        }
        emit(out, report.dump(2) + "\n", meta);
        return {out};
    }

    if (in.truth.empty()) throw InvalidInput("evaluate needs --truth, or --seeds for a synthetic batch");
    const std::string truth_bytes = read_file(in.truth);
    const auto truth = truth_from_geojson(truth_bytes);
    meta["inputs"]["truth"] = sha256_hex(truth_bytes);
    report["truth_gois"] = truth.truth.gois.size();

    std::optional<std::string> digest;
    auto chain = [&](const ArtifactHeader& h, const std::string& what) {
        if (digest) require_digest(*digest, h.trajectory_digest, what);
        digest = h.trajectory_digest;
    };

    if (!in.stays.empty()) {
        const std::string bytes = read_file(in.stays);
        const auto stays = stays_from_geojson(bytes);
        chain(stays.header, "stays");
        meta["inputs"]["stays"] = sha256_hex(bytes);
        const auto st = stay_stats(stays.stays);
        report["stays"] = {{"method", std::string(to_string(stays.method))},
                           {"count", st.count},
                           {"single_point_count", st.single_point_count}};
    }
    std::optional<DestinationsArtifact> dests;
    if (!in.destinations.empty()) {
        const std::string bytes = read_file(in.destinations);
        dests = destinations_from_geojson(bytes);
        chain(dests->header, "destinations");
        meta["inputs"]["destinations"] = sha256_hex(bytes);
        const auto ds = destination_stats(dests->destinations);
        json hist = json::object();
        for (const auto& [f, n] : ds.frequency_histogram) hist[std::to_string(f)] = n;
        report["destinations"] = {{"method", std::string(to_string(dests->method))},
                                  {"count", ds.count},
                                  {"frequency_histogram", hist}};
    }

    std::vector<Region> estimate;
    LatLon frame;
    if (!in.grid.empty()) {
        const std::string bytes = read_file(in.grid);
        const auto grid = grid_from_geojson(bytes);
        chain(grid.header, "grid");
        meta["inputs"]["grid"] = sha256_hex(bytes);
        estimate = goi_regions(grid.grid);
        frame = grid.header.origin;
        report["estimate"] = "grid";
    } else if (dests) {
        for (const auto& d : dests->destinations) estimate.push_back(d.geometry);
        frame = dests->header.origin;
        report["estimate"] = "destinations";
    } else {
        throw InvalidInput("evaluate needs --grid or --destinations to score against the truth");
    }
    report["estimated_gois"] = estimate.size();
    report["similarity"] = num(geometric_similarity(reproject(truth, frame), estimate));
    if (digest) {
        report["trajectory_digest"] = *digest;
        meta["trajectory_digest"] = *digest;
    }
    emit(out, report.dump(2) + "\n", meta);
    return {out};
}

std::vector<std::string> synth_stage(const ScenarioSpec& spec, const std::string& dir) {
    fs::create_directories(dir);
    const Scenario scenario = generate_scenario(spec);
    const std::string traj_path = (fs::path(dir) / "trajectory.csv").string();
    const std::string truth_path = (fs::path(dir) / "truth.geojson").string();
    const std::string spec_path = (fs::path(dir) / "scenario.cfg").string();

    json scenario_json = json::object();
    for (const auto& [k, v] : scenario_to_config(spec)) scenario_json[k] = v;
    json meta{{"command", "synth"}, {"scenario", scenario_json}, {"seed", spec.seed}};

    std::ostringstream cfg;
    write_key_values(cfg, scenario_to_config(spec));
    const std::string traj_bytes = trajectory_to_csv(scenario.trajectory);
    meta["trajectory_digest"] = sha256_hex(traj_bytes);
    meta["visits"] = json::array();
    for (const auto& v : scenario.visits)
        meta["visits"].push_back({{"goi", v.goi}, {"arrive", v.arrive}, {"depart", v.depart}});

    emit(traj_path, traj_bytes, meta);
    emit(truth_path, truth_to_geojson({{"truth", spec.origin, {}}, scenario.truth}), meta);
    emit(spec_path, cfg.str(), meta);
    return {traj_path, truth_path, spec_path};
}

ScenarioSpec load_scenario(const std::string& path, const std::optional<std::uint64_t>& seed) {
    ScenarioSpec spec;
    if (!path.empty()) spec = apply_scenario_config(spec, read_key_values_file(path));
    if (seed) spec.seed = *seed;
    return spec;
}

// Command line ------------------------------------------------------------------------------

struct Options {
    std::string config_path;
    KeyValues overrides;
    std::string in, out, traj, grid, destinations, truth, stays, origin, scenario, seeds;
    std::optional<std::uint64_t> seed;
};

void add_param(CLI::App* app, Options& o, const std::string& flag, const std::string& key,
               const std::string& help) {
    app->add_option_function<std::string>(
        flag, [&o, key](const std::string& v) { o.overrides[key] = v; }, help);
}

void add_stay_params(CLI::App* app, Options& o) {
    add_param(app, o, "--t-min", "t_min", "minimum stay duration, seconds");
    add_param(app, o, "--d-max", "d_max", "roaming distance from the reference point, meters");
    add_param(app, o, "--diam-max", "diam_max", "diameter bound of the diameter extractor, meters");
    add_param(app, o, "--buffer", "buffer", "buffer around each stay hull, meters");
}

void add_merge_params(CLI::App* app, Options& o) {
    add_param(app, o, "--j-min", "j_min", "Jaccard threshold of the geometric merge");
    add_param(app, o, "--f-min", "f_min", "minimum visit frequency of a destination");
    add_param(app, o, "--eps", "eps", "OPTICS neighbourhood radius, meters");
    add_param(app, o, "--min-pts", "min_pts", "OPTICS density threshold");
    add_param(app, o, "--diameter-min", "diameter_min", "diameter merge threshold, meters");
}

void add_partition_params(CLI::App* app, Options& o) {
    add_param(app, o, "--cell-size", "cell_size", "micro-grid cell size, meters");
    add_param(app, o, "--metric", "metric", "cell assignment metric: GS or PCS");
}

void add_label_params(CLI::App* app, Options& o) {
    add_param(app, o, "--strategy", "strategy", "labelling strategy: intersection or nnq");
    app->add_flag_callback("--collapse", [&o] { o.overrides["collapse"] = "true"; },
                           "drop entries repeating the previous label");
}

PipelineConfig resolve(const Options& o) {
    PipelineConfig config;
    if (!o.config_path.empty()) config = apply_config(config, read_key_values_file(o.config_path));
    config = apply_config(config, o.overrides);
    config.validate();
    return config;
}

std::optional<LatLon> origin_of(const Options& o) {
    if (o.origin.empty()) return std::nullopt;
    return parse_origin(o.origin);
}

json error_record(const std::string& kind, const std::string& message) {
    return {{"error", {{"kind", kind}, {"message", message}}}};
}

} // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Stay, destination and GOI extraction from GPS trajectories", "goigrid"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string(kToolVersion));
    Options o;

    auto common = [&](CLI::App* sub) {
        sub->add_option("--config", o.config_path, "flat key=value parameter file")->check(CLI::ExistingFile);
    };

    auto* stays = app.add_subcommand("extract-stays", "trajectory CSV to stay regions");
    common(stays);
    stays->add_option("--in", o.in, "trajectory CSV (t,lat,lon)")->required()->check(CLI::ExistingFile);
    stays->add_option("--out", o.out, "stays GeoJSON; a CSV manifest is written beside it")->required();
    stays->add_option("--origin", o.origin, "projection origin 'lat,lon' (default: mean position)");
    add_param(stays, o, "--method", "stay_method", "twc, refpoint or diameter");
    add_stay_params(stays, o);

    auto* dests = app.add_subcommand("extract-destinations", "stay regions to destination regions");
    common(dests);
    dests->add_option("--in", o.in, "stays GeoJSON")->required()->check(CLI::ExistingFile);
    dests->add_option("--out", o.out, "destinations GeoJSON")->required();
    add_param(dests, o, "--method", "destination_method", "geometric, optics or diameter");
    add_merge_params(dests, o);

    auto* part = app.add_subcommand("partition", "destinations to a final grid over the trajectory box");
    common(part);
    part->add_option("--destinations,--in", o.destinations, "destinations GeoJSON")
        ->required()
        ->check(CLI::ExistingFile);
    part->add_option("--traj", o.traj, "trajectory CSV the destinations came from")
        ->required()
        ->check(CLI::ExistingFile);
    part->add_option("--out", o.out, "final grid GeoJSON")->required();
    add_partition_params(part, o);

    auto* label = app.add_subcommand("label", "trajectory to a sequence of visited locations");
    common(label);
    label->add_option("--traj,--in", o.traj, "trajectory CSV")->required()->check(CLI::ExistingFile);
    label->add_option("--grid", o.grid, "final grid GeoJSON (intersection)")->check(CLI::ExistingFile);
    label->add_option("--destinations", o.destinations, "destinations GeoJSON (nnq)")->check(CLI::ExistingFile);
    label->add_option("--out", o.out, "SVL CSV; a JSON-lines copy is written beside it")->required();
    add_label_params(label, o);

    auto* eval = app.add_subcommand("evaluate", "geometric similarity against ground truth");
    common(eval);
    eval->add_option("--truth", o.truth, "ground-truth GeoJSON")->check(CLI::ExistingFile);
    eval->add_option("--grid", o.grid, "final grid GeoJSON")->check(CLI::ExistingFile);
    eval->add_option("--destinations", o.destinations, "destinations GeoJSON")->check(CLI::ExistingFile);
    eval->add_option("--stays", o.stays, "stays GeoJSON, for stay statistics")->check(CLI::ExistingFile);
    eval->add_option("--seeds", o.seeds, "synthetic batch instead of files, e.g. 1-20");
    eval->add_option("--scenario", o.scenario, "scenario key=value file for --seeds")->check(CLI::ExistingFile);
    eval->add_option("--out", o.out, "evaluation report JSON")->required();
    add_stay_params(eval, o);
    add_merge_params(eval, o);
    add_partition_params(eval, o);

    auto* synth = app.add_subcommand("synth", "seeded synthetic trajectory with ground truth");
    synth->add_option("--scenario", o.scenario, "scenario key=value file")->check(CLI::ExistingFile);
    synth->add_option("--seed", o.seed, "overrides the scenario seed");
    synth->add_option("--out", o.out, "output directory")->required();

    auto* pipe = app.add_subcommand("pipeline", "every stage, chained through files");
    common(pipe);
    pipe->add_option("--in", o.in, "trajectory CSV (omit with --seed)")->check(CLI::ExistingFile);
    pipe->add_option("--truth", o.truth, "ground-truth GeoJSON to evaluate against")->check(CLI::ExistingFile);
    pipe->add_option("--seed", o.seed, "generate a synthetic scenario first");
    pipe->add_option("--scenario", o.scenario, "scenario key=value file for --seed")->check(CLI::ExistingFile);
    pipe->add_option("--origin", o.origin, "projection origin 'lat,lon'");
    pipe->add_option("--out", o.out, "output directory")->required();
    add_param(pipe, o, "--stay-method", "stay_method", "twc, refpoint or diameter");
    add_param(pipe, o, "--destination-method", "destination_method", "geometric, optics or diameter");
    add_stay_params(pipe, o);
    add_merge_params(pipe, o);
    add_partition_params(pipe, o);
    add_label_params(pipe, o);

    try {
        app.parse(argc, argv);
    } catch (const CLI::Success& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        err << error_record("usage", e.what()).dump() << "\n";
        return 2;
    }

    try {
        std::vector<std::string> written;
        if (*stays) {
            written = extract_stays_stage(o.in, origin_of(o), resolve(o), o.out);
        } else if (*dests) {
            written = extract_destinations_stage(o.in, resolve(o), o.out);
        } else if (*part) {
            written = partition_stage(o.destinations, o.traj, resolve(o), o.out);
        } else if (*label) {
            written = label_stage(o.traj, o.grid, o.destinations, resolve(o), o.out);
        } else if (*eval) {
            written = evaluate_stage({o.truth, o.grid, o.destinations, o.stays, o.seeds, o.scenario}, resolve(o), o.out);
        } else if (*synth) {
            written = synth_stage(load_scenario(o.scenario, o.seed), o.out);
        } else if (*pipe) {
            const PipelineConfig config = resolve(o);
            fs::create_directories(o.out);
            const fs::path dir(o.out);
            std::string traj = o.in;
            std::string truth = o.truth;
            std::optional<LatLon> origin = origin_of(o);
            if (o.seed) {
                if (!o.in.empty()) throw InvalidInput("pipeline takes either --in or --seed, not both");
                const ScenarioSpec spec = load_scenario(o.scenario, o.seed);
                written = synth_stage(spec, o.out);
                traj = written[0];
                if (truth.empty()) truth = written[1];
                if (!origin) origin = spec.origin;
            } else if (traj.empty()) {
                throw InvalidInput("pipeline needs --in or --seed");
            }
            auto append = [&written](const std::vector<std::string>& more) {
                written.insert(written.end(), more.begin(), more.end());
            };
            const std::string stays_path = (dir / "stays.geojson").string();
            const std::string dests_path = (dir / "destinations.geojson").string();
            const std::string grid_path = (dir / "grid.geojson").string();
            append(extract_stays_stage(traj, origin, config, stays_path));
            append(extract_destinations_stage(stays_path, config, dests_path));
            append(partition_stage(dests_path, traj, config, grid_path));
            append(label_stage(traj, grid_path, dests_path, config, (dir / "svl.csv").string()));
            if (!truth.empty()) {
                EvaluateInputs ev{truth, grid_path, dests_path, stays_path, {}, {}};
                append(evaluate_stage(ev, config, (dir / "evaluation.json").string()));
            }
        }
        out << json{{"status", "ok"}, {"outputs", written}}.dump() << "\n";
        return 0;
    } catch (const StageMismatch& e) {
        json rec = error_record(e.kind(), e.what());
        rec["error"]["expected_digest"] = e.expected();
        rec["error"]["actual_digest"] = e.actual();
        err << rec.dump() << "\n";
    } catch (const InvalidInput& e) {
        json rec = error_record(e.kind(), e.what());
        if (e.index()) rec["error"]["index"] = *e.index();
        err << rec.dump() << "\n";
    } catch (const Error& e) {
        err << error_record(e.kind(), e.what()).dump() << "\n";
    } catch (const std::exception& e) {
        err << error_record("internal", e.what()).dump() << "\n";
    }
    return 1;
}

} // namespace goigrid::cli
