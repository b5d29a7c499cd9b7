#include "goigrid/config.hpp"
#include "goigrid/destinations.hpp"
#include "goigrid/error.hpp"
#include "goigrid/evaluation.hpp"
#include "goigrid/geometry.hpp"
#include "goigrid/io.hpp"
#include "goigrid/partition.hpp"
#include "goigrid/pipeline.hpp"
#include "goigrid/stays.hpp"
#include "goigrid/svl.hpp"
#include "goigrid/synth.hpp"
#include "goigrid/trajectory.hpp"

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <tuple>

namespace py = pybind11;
using namespace goigrid;

namespace {

using Coords = std::vector<std::pair<double, double>>;

/// Polygons as [outer, hole, ...] rings of (x, y), closed.
std::vector<std::vector<Coords>> rings_of(const Region& r) {
    std::vector<std::vector<Coords>> out;
    for (const auto& poly : r.polygons()) {
        std::vector<Coords> rings;
        auto add = [&rings](const auto& ring) {
            Coords pts;
            for (const auto& p : ring) pts.emplace_back(p.x, p.y);
            rings.push_back(std::move(pts));
        };
        add(poly.outer());
        for (const auto& hole : poly.inners()) add(hole);
        out.push_back(std::move(rings));
    }
    return out;
}

Region region_from_ring(const Coords& ring) {
    std::vector<PlanarPoint> pts;
    for (const auto& [x, y] : ring) pts.push_back({x, y});
    return Region::from_ring(pts);
}

std::optional<LatLon> origin_arg(const std::optional<std::pair<double, double>>& o) {
    if (!o) return std::nullopt;
    return LatLon{o->first, o->second};
}

ScenarioSpec scenario_with(std::uint64_t seed, const std::map<std::string, std::string>& overrides) {
    ScenarioSpec spec = apply_scenario_config(ScenarioSpec{}, overrides);
    spec.seed = seed;
    spec.validate();
    return spec;
}

} // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Stay, destination and GOI extraction from GPS trajectories";
    m.attr("__version__") = std::string(kToolVersion);

    auto error = py::register_exception<Error>(m, "GoigridError", PyExc_RuntimeError);
    py::register_exception<InvalidInput>(m, "InvalidInput", PyExc_ValueError);
    py::register_exception<StageMismatch>(m, "StageMismatch", error.ptr());

    // Geometry -------------------------------------------------------------------------
    py::class_<Region>(m, "Region")
        .def_static("from_ring", &region_from_ring, py::arg("ring"))
        .def_static("rectangle",
                    [](double x0, double y0, double x1, double y1) { return Region::rectangle({x0, y0, x1, y1}); })
        .def_property_readonly("area", [](const Region& r) { return area(r); })
        .def_property_readonly("empty", &Region::empty)
        .def_property_readonly("centroid",
                               [](const Region& r) {
                                   const auto c = r.centroid();
                                   return std::make_pair(c.x, c.y);
                               })
        .def_property_readonly("bounds",
                               [](const Region& r) {
                                   const auto b = r.bbox();
                                   return std::make_tuple(b.min_x, b.min_y, b.max_x, b.max_y);
                               })
        .def("rings", &rings_of)
        .def("covers", [](const Region& r, double x, double y) { return covers(r, {x, y}); })
        .def("intersection", [](const Region& a, const Region& b) { return intersection(a, b); })
        .def("union", [](const Region& a, const Region& b) { return unite(a, b); })
        .def("__eq__", [](const Region& a, const Region& b) { return a == b; });

    m.def("jaccard", &jaccard, py::arg("a"), py::arg("b"));
    m.def(
        "project",
        [](double lat, double lon, double origin_lat, double origin_lon) {
            const auto p = project({lat, lon}, {origin_lat, origin_lon});
            return std::make_pair(p.x, p.y);
        },
        py::arg("lat"), py::arg("lon"), py::arg("origin_lat"), py::arg("origin_lon"));
    m.def(
        "unproject",
        [](double x, double y, double origin_lat, double origin_lon) {
            const auto ll = unproject({x, y}, {origin_lat, origin_lon});
            return std::make_pair(ll.lat, ll.lon);
        },
        py::arg("x"), py::arg("y"), py::arg("origin_lat"), py::arg("origin_lon"));

    // Trajectories ---------------------------------------------------------------------
    py::class_<Trajectory>(m, "Trajectory")
        .def_static(
            "from_records",
            [](const std::vector<std::tuple<Timestamp, double, double>>& records,
               std::optional<std::pair<double, double>> origin) {
                std::vector<RawRecord> raw;
                for (const auto& [t, lat, lon] : records) raw.push_back({t, {lat, lon}});
                const auto o = origin_arg(origin);
                return o ? ingest(raw, *o) : ingest(raw);
            },
            py::arg("records"), py::arg("origin") = py::none(), "From (t, lat, lon) records.")
        .def_static(
            "from_planar",
            [](const std::vector<std::tuple<Timestamp, double, double>>& fixes, std::pair<double, double> origin) {
                std::vector<TrackPoint> pts;
                for (const auto& [t, x, y] : fixes) pts.push_back({t, {x, y}, 0});
                return Trajectory(std::move(pts), {origin.first, origin.second});
            },
            py::arg("fixes"), py::arg("origin"), "From (t, x, y) fixes in meters around `origin`.")
        .def_static(
            "read_csv",
            [](const std::string& path, std::optional<std::pair<double, double>> origin) {
                const auto raw = read_records_csv_file(path);
                const auto o = origin_arg(origin);
                return o ? ingest(raw, *o) : ingest(raw);
            },
            py::arg("path"), py::arg("origin") = py::none())
        .def("__len__", &Trajectory::size)
        .def_property_readonly("origin",
                               [](const Trajectory& t) { return std::make_pair(t.origin().lat, t.origin().lon); })
        .def_property_readonly("points",
                               [](const Trajectory& t) {
                                   std::vector<std::tuple<Timestamp, double, double, std::int64_t>> out;
                                   for (const auto& p : t.points()) out.emplace_back(p.t, p.p.x, p.p.y, p.tv);
                                   return out;
                               },
                               "(t, x, y, tv) per fix")
        .def("to_csv", &trajectory_to_csv);

    // Parameters -----------------------------------------------------------------------
    py::class_<StayParams>(m, "StayParams")
        .def(py::init<>())
        .def_readwrite("d_max", &StayParams::d_max)
        .def_readwrite("t_min", &StayParams::t_min)
        .def_readwrite("buffer_width", &StayParams::buffer_width)
        .def_readwrite("diam_max", &StayParams::diam_max);

    py::class_<MergeParams>(m, "MergeParams")
        .def(py::init<>())
        .def_readwrite("j_min", &MergeParams::j_min)
        .def_readwrite("f_min", &MergeParams::f_min)
        .def_readwrite("eps", &MergeParams::eps)
        .def_readwrite("min_pts", &MergeParams::min_pts)
        .def_readwrite("diameter_min", &MergeParams::diameter_min);

    py::class_<PipelineConfig>(m, "PipelineConfig")
        .def(py::init<>())
        .def_static(
            "from_dict",
            [](const std::map<std::string, std::string>& kv) { return apply_config(PipelineConfig{}, kv); },
            py::arg("values"))
        .def_readwrite("stay", &PipelineConfig::stay)
        .def_readwrite("merge", &PipelineConfig::merge)
        .def_readwrite("cell_size", &PipelineConfig::cell_size)
        .def("to_dict", &PipelineConfig::to_key_values);

    // Stays and destinations -----------------------------------------------------------
    py::class_<Stay>(m, "Stay")
        .def_readonly("id", &Stay::id)
        .def_readonly("at", &Stay::at)
        .def_readonly("dt", &Stay::dt)
        .def_readonly("first_index", &Stay::first_index)
        .def_readonly("geometry", &Stay::g)
        .def_property_readonly("point_count", [](const Stay& s) { return s.ps.size(); })
        .def_property_readonly("centroid", [](const Stay& s) { return std::make_pair(s.c.x, s.c.y); });

    py::class_<Destination>(m, "Destination")
        .def_readonly("id", &Destination::id)
        .def_readonly("frequency", &Destination::frequency)
        .def_readonly("stay_ids", &Destination::stay_ids)
        .def_readonly("geometry", &Destination::geometry)
        .def_property_readonly("point_count", [](const Destination& d) { return d.points.size(); });

    m.def(
        "extract_stays",
        [](const Trajectory& traj, const StayParams& params, const std::string& method) {
            return extract_stays(traj, params, parse_stay_method(method));
        },
        py::arg("trajectory"), py::arg("params") = StayParams{}, py::arg("method") = "twc");
    m.def(
        "extract_destinations",
        [](const std::vector<Stay>& stays, const MergeParams& params, const std::string& method) {
            return extract_destinations(stays, params, parse_destination_method(method));
        },
        py::arg("stays"), py::arg("params") = MergeParams{}, py::arg("method") = "geometric");

    // Partition and labelling ----------------------------------------------------------
    py::class_<GridCell>(m, "GridCell")
        .def_readonly("id", &GridCell::id)
        .def_readonly("geometry", &GridCell::geometry)
        .def_readonly("source_destination", &GridCell::source_destination)
        .def_property_readonly("kind", [](const GridCell& c) { return std::string(to_string(c.kind)); });

    py::class_<FinalGrid>(m, "FinalGrid")
        .def_property_readonly("cells", &FinalGrid::cells)
        .def("locate", [](const FinalGrid& g, double x, double y) { return g.locate({x, y}); })
        .def(
            "validate",
            [](const FinalGrid& g, const Trajectory& traj) {
                const auto r = validate_partition(g, traj);
                py::dict d;
                d["max_overlap_area"] = r.max_overlap_area;
                d["uncovered_area"] = r.uncovered_area;
                d["points_not_in_one_cell"] = r.points_not_in_one_cell;
                d["passes"] = r.passes();
                return d;
            },
            py::arg("trajectory"));

    m.def(
        "partition",
        [](const Trajectory& traj, const std::vector<Destination>& dests, double cell_size, const std::string& metric) {
            return partition_trajectory(traj, dests, cell_size, parse_metric(metric));
        },
        py::arg("trajectory"), py::arg("destinations"), py::arg("cell_size") = 5.0, py::arg("metric") = "GS");

    auto svl_rows = [](const std::vector<SvlEntry>& svl) {
        std::vector<std::tuple<Timestamp, std::int64_t, std::string>> out;
        for (const auto& e : svl) out.emplace_back(e.t, e.label, std::string(to_string(e.kind)));
        return out;
    };
    m.def(
        "label",
        [svl_rows](const Trajectory& traj, const FinalGrid& grid, bool collapse) {
            return svl_rows(label_by_intersection(traj, grid, collapse));
        },
        py::arg("trajectory"), py::arg("grid"), py::arg("collapse") = false, "(t, label, kind) per fix");
    m.def(
        "label_nnq",
        [svl_rows](const Trajectory& traj, const std::vector<Destination>& dests, bool collapse) {
            return svl_rows(label_by_nnq(traj, dests, collapse));
        },
        py::arg("trajectory"), py::arg("destinations"), py::arg("collapse") = false);

    // Evaluation and synthesis ---------------------------------------------------------
    m.def(
        "geometric_similarity",
        [](const std::vector<Region>& truth, const std::vector<Region>& estimated) {
            GroundTruth gt;
            for (std::size_t k = 0; k < truth.size(); ++k) gt.gois.emplace_back(static_cast<int>(k), truth[k]);
            return geometric_similarity(gt, estimated);
        },
        py::arg("truth"), py::arg("estimated"));

    m.def(
        "generate_scenario",
        [](std::uint64_t seed, const std::map<std::string, std::string>& overrides) {
            const Scenario s = generate_scenario(scenario_with(seed, overrides));
            std::vector<Region> truth;
            for (const auto& [id, r] : s.truth.gois) truth.push_back(r);
            return std::make_pair(s.trajectory, truth);
        },
        py::arg("seed"), py::arg("overrides") = std::map<std::string, std::string>{},
        "Returns (trajectory, ground-truth regions).");

    m.def(
        "estimate_gois", [](const Trajectory& traj, const PipelineConfig& config) { return estimate_gois(traj, config); },
        py::arg("trajectory"), py::arg("config") = PipelineConfig{});

    m.def(
        "evaluate_batch",
        [](const std::vector<std::uint64_t>& seeds, const std::map<std::string, std::string>& overrides) {
            const ScenarioSpec spec = apply_scenario_config(ScenarioSpec{}, overrides);
            BatchReport report;
            {
                py::gil_scoped_release release;
                report = evaluate_batch(spec, seeds, standard_methods(PipelineConfig{}));
            }
            py::dict out;
            for (const auto& method : report.methods) {
                py::dict d;
                d["similarity"] = method.similarity;
                d["mean_similarity"] = method.mean_similarity();
                d["destinations"] = method.destinations;
                d["stays"] = method.stays;
                out[py::str(method.name)] = d;
            }
            return out;
        },
        py::arg("seeds"), py::arg("overrides") = std::map<std::string, std::string>{},
        "Scores the proposed pipeline and both baselines on one scenario per seed.");
}
