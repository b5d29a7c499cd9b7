#include "goigrid/io.hpp"

#include "goigrid/error.hpp"
#include "goigrid/format.hpp"

#include <nlohmann/json.hpp>
#include <openssl/evp.h>

#include <fstream>
#include <iterator>
#include <sstream>

namespace goigrid {

using nlohmann::json;

std::string sha256_hex(std::string_view bytes) {
    unsigned char digest[EVP_MAX_MD_SIZE];
    unsigned int length = 0;
    if (EVP_Digest(bytes.data(), bytes.size(), digest, &length, EVP_sha256(), nullptr) != 1)
        throw Error("SHA-256 digest failed");
    static constexpr char kHex[] = "0123456789abcdef";
    std::string out;
    out.reserve(2 * length);
    for (unsigned int i = 0; i < length; ++i) {
        out.push_back(kHex[digest[i] >> 4]);
        out.push_back(kHex[digest[i] & 0xf]);
    }
    return out;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InvalidInput("cannot open '" + path + "'");
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void write_file(const std::string& path, std::string_view bytes) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot write '" + path + "'", "io_error");
    out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    if (!out) throw Error("write to '" + path + "' failed", "io_error");
}

namespace {

// Encoding ----------------------------------------------------------------------------

json num(double v) { return round_significant(v); }

json encode_point(const PlanarPoint& p) { return json::array({num(p.x), num(p.y)}); }

json encode_region(const Region& r) {
    json polygons = json::array();
    for (const auto& poly : r.polygons()) {
        json rings = json::array();
        auto ring_json = [](const Ring& ring) {
            json pts = json::array();
            for (const auto& p : ring) pts.push_back(encode_point(p));
            return pts;
        };
        rings.push_back(ring_json(poly.outer()));
        for (const auto& hole : poly.inners()) rings.push_back(ring_json(hole));
        polygons.push_back(std::move(rings));
    }
    return {{"type", "MultiPolygon"}, {"coordinates", std::move(polygons)}};
}

json encode_track_points(std::span<const TrackPoint> points) {
    json out = json::array();
    for (const auto& p : points) out.push_back(json::array({p.t, num(p.p.x), num(p.p.y), p.tv}));
    return out;
}

json encode_header(const ArtifactHeader& h) {
    json out{{"kind", h.kind},
             {"crs", "local-equirectangular-meters"},
             {"origin", json::array({num(h.origin.lat), num(h.origin.lon)})}};
    if (!h.trajectory_digest.empty()) out["trajectory_digest"] = h.trajectory_digest;
    return out;
}

json encode_merge_params(const MergeParams& p) {
    return {{"j_min", num(p.j_min)},
            {"f_min", p.f_min},
            {"eps", num(p.eps)},
            {"min_pts", p.min_pts},
            {"diameter_min", num(p.diameter_min)}};
}

std::string collection(json header, json features) {
    json doc{{"type", "FeatureCollection"}, {"goigrid", std::move(header)}, {"features", std::move(features)}};
    return doc.dump() + "\n";
}

json feature(json geometry, json properties) {
    return {{"type", "Feature"}, {"geometry", std::move(geometry)}, {"properties", std::move(properties)}};
}

// Decoding ----------------------------------------------------------------------------

json parse(std::string_view text, const char* what) {
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        throw InvalidInput(std::string(what) + ": malformed JSON (" + e.what() + ")");
    }
}

template <typename T>
T get(const json& j, const char* key, const char* what) {
    if (!j.is_object() || !j.contains(key))
        throw InvalidInput(std::string(what) + ": missing '" + key + "'");
    try {
        return j.at(key).get<T>();
    } catch (const json::exception&) {
        throw InvalidInput(std::string(what) + ": bad value for '" + key + "'");
    }
}

PlanarPoint decode_point(const json& j, const char* what) {
    if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
        throw InvalidInput(std::string(what) + ": bad coordinate pair");
    return {j[0].get<double>(), j[1].get<double>()};
}

Region decode_region(const json& g, const char* what) {
    const auto type = get<std::string>(g, "type", what);
    const json& coords = g.at("coordinates");
    auto decode_polygon = [&](const json& rings) {
        if (!rings.is_array() || rings.empty()) throw InvalidInput(std::string(what) + ": empty polygon");
        Polygon poly;
        for (std::size_t r = 0; r < rings.size(); ++r) {
            Ring ring;
            for (const auto& p : rings[r]) ring.push_back(decode_point(p, what));
            if (r == 0) poly.outer() = std::move(ring);
            else poly.inners().push_back(std::move(ring));
        }
        return poly;
    };
    MultiPolygon mp;
    if (type == "Polygon") mp.push_back(decode_polygon(coords));
    else if (type == "MultiPolygon")
        for (const auto& rings : coords) mp.push_back(decode_polygon(rings));
    else throw InvalidInput(std::string(what) + ": unsupported geometry type '" + type + "'");
    return Region(std::move(mp));
}

std::vector<TrackPoint> decode_track_points(const json& j, const char* what) {
    std::vector<TrackPoint> out;
    for (const auto& row : j) {
        if (!row.is_array() || row.size() != 4) throw InvalidInput(std::string(what) + ": bad point record");
        out.push_back({row[0].get<Timestamp>(), {row[1].get<double>(), row[2].get<double>()},
                       row[3].get<std::int64_t>()});
    }
    return out;
}

ArtifactHeader decode_header(const json& doc, const std::string& expected_kind, const char* what) {
    if (get<std::string>(doc, "type", what) != "FeatureCollection")
        throw InvalidInput(std::string(what) + ": not a FeatureCollection");
    const json& h = doc.contains("goigrid") ? doc.at("goigrid") : json();
    ArtifactHeader out;
    out.kind = get<std::string>(h, "kind", what);
    if (out.kind != expected_kind)
        throw StageMismatch(std::string(what) + ": expected a " + expected_kind + " artifact, got " + out.kind);
    const auto origin = get<std::vector<double>>(h, "origin", what);
    if (origin.size() != 2) throw InvalidInput(std::string(what) + ": origin needs two values");
    out.origin = {origin[0], origin[1]};
    if (h.contains("trajectory_digest")) out.trajectory_digest = get<std::string>(h, "trajectory_digest", what);
    return out;
}

const json& features_of(const json& doc, const char* what) {
    if (!doc.contains("features") || !doc.at("features").is_array())
        throw InvalidInput(std::string(what) + ": missing features");
    return doc.at("features");
}

} // namespace

// Stays -------------------------------------------------------------------------------

std::string stays_to_geojson(const StaysArtifact& a) {
    json header = encode_header(a.header);
    header["method"] = std::string(to_string(a.method));
    json features = json::array();
    for (const auto& s : a.stays) {
        features.push_back(feature(encode_region(s.g), {{"id", s.id},
                                                        {"at", s.at},
                                                        {"dt", s.dt},
                                                        {"point_count", s.ps.size()},
                                                        {"first_index", s.first_index},
                                                        {"centroid", encode_point(s.c)},
                                                        {"points", encode_track_points(s.ps)}}));
    }
    return collection(std::move(header), std::move(features));
}

StaysArtifact stays_from_geojson(std::string_view text) {
    constexpr const char* what = "stays";
    const json doc = parse(text, what);
    StaysArtifact a;
    a.header = decode_header(doc, "stays", what);
    a.method = parse_stay_method(get<std::string>(doc.at("goigrid"), "method", what));
    for (const auto& f : features_of(doc, what)) {
        const json& p = f.at("properties");
        Stay s;
        s.id = get<int>(p, "id", what);
        s.at = get<Timestamp>(p, "at", what);
        s.dt = get<Timestamp>(p, "dt", what);
        s.first_index = get<std::size_t>(p, "first_index", what);
        s.c = decode_point(p.at("centroid"), what);
        s.ps = decode_track_points(p.at("points"), what);
        if (s.ps.size() != get<std::size_t>(p, "point_count", what))
            throw InvalidInput("stays: point_count disagrees with points of stay " + std::to_string(s.id));
        s.g = decode_region(f.at("geometry"), what);
        a.stays.push_back(std::move(s));
    }
    return a;
}

std::string stays_to_csv(std::span<const Stay> stays) {
    std::ostringstream out;
    out << "id,at,dt,point_count,centroid_x,centroid_y\n";
    for (const auto& s : stays)
        out << s.id << ',' << s.at << ',' << s.dt << ',' << s.ps.size() << ',' << format_number(s.c.x) << ','
            << format_number(s.c.y) << '\n';
    return out.str();
}

// Destinations --------------------------------------------------------------------------

std::string destinations_to_geojson(const DestinationsArtifact& a) {
    json header = encode_header(a.header);
    header["method"] = std::string(to_string(a.method));
    header["params"] = encode_merge_params(a.params);
    json features = json::array();
    for (const auto& d : a.destinations) {
        features.push_back(feature(encode_region(d.geometry), {{"id", d.id},
                                                               {"frequency", d.frequency},
                                                               {"method", std::string(to_string(a.method))},
                                                               {"params", encode_merge_params(a.params)},
                                                               {"stay_ids", d.stay_ids},
                                                               {"points", encode_track_points(d.points)}}));
    }
    return collection(std::move(header), std::move(features));
}

DestinationsArtifact destinations_from_geojson(std::string_view text) {
    constexpr const char* what = "destinations";
    const json doc = parse(text, what);
    DestinationsArtifact a;
    a.header = decode_header(doc, "destinations", what);
    const json& h = doc.at("goigrid");
    a.method = parse_destination_method(get<std::string>(h, "method", what));
    const json& params = h.at("params");
    a.params.j_min = get<double>(params, "j_min", what);
    a.params.f_min = get<int>(params, "f_min", what);
    a.params.eps = get<double>(params, "eps", what);
    a.params.min_pts = get<int>(params, "min_pts", what);
    a.params.diameter_min = get<double>(params, "diameter_min", what);
    for (const auto& f : features_of(doc, what)) {
        const json& p = f.at("properties");
        Destination d;
        d.id = get<int>(p, "id", what);
        d.frequency = get<int>(p, "frequency", what);
        d.stay_ids = get<std::vector<int>>(p, "stay_ids", what);
        d.points = decode_track_points(p.at("points"), what);
        d.geometry = decode_region(f.at("geometry"), what);
        a.destinations.push_back(std::move(d));
    }
    return a;
}

// Grid --------------------------------------------------------------------------------

std::string grid_to_geojson(const GridArtifact& a) {
    json header = encode_header(a.header);
    const BoundingBox& b = a.grid.bbox();
    header["bbox"] = json::array({num(b.min_x), num(b.min_y), num(b.max_x), num(b.max_y)});
    header["cell_size"] = num(a.cell_size);
    header["metric"] = std::string(to_string(a.metric));
    json features = json::array();
    for (const auto& c : a.grid.cells()) {
        json props{{"id", c.id}, {"kind", std::string(to_string(c.kind))}};
        props["source_destination"] = c.source_destination ? json(*c.source_destination) : json(nullptr);
        features.push_back(feature(encode_region(c.geometry), std::move(props)));
    }
    return collection(std::move(header), std::move(features));
}

GridArtifact grid_from_geojson(std::string_view text) {
    constexpr const char* what = "grid";
    const json doc = parse(text, what);
    GridArtifact a;
    a.header = decode_header(doc, "grid", what);
    const json& h = doc.at("goigrid");
    const auto b = get<std::vector<double>>(h, "bbox", what);
    if (b.size() != 4) throw InvalidInput("grid: bbox needs four values");
    a.cell_size = get<double>(h, "cell_size", what);
    a.metric = parse_metric(get<std::string>(h, "metric", what));
    std::vector<GridCell> cells;
    for (const auto& f : features_of(doc, what)) {
        const json& p = f.at("properties");
        GridCell c;
        c.id = get<CellId>(p, "id", what);
        c.kind = parse_cell_kind(get<std::string>(p, "kind", what));
        if (p.contains("source_destination") && !p.at("source_destination").is_null())
            c.source_destination = get<int>(p, "source_destination", what);
        c.geometry = decode_region(f.at("geometry"), what);
        cells.push_back(std::move(c));
    }
    a.grid = FinalGrid(std::move(cells), {b[0], b[1], b[2], b[3]});
    return a;
}

// Truth -------------------------------------------------------------------------------

std::string truth_to_geojson(const TruthArtifact& a) {
    json features = json::array();
    for (const auto& [id, region] : a.truth.gois) features.push_back(feature(encode_region(region), {{"id", id}}));
    return collection(encode_header(a.header), std::move(features));
}

TruthArtifact truth_from_geojson(std::string_view text) {
    constexpr const char* what = "truth";
    const json doc = parse(text, what);
    TruthArtifact a;
    a.header = decode_header(doc, "truth", what);
    for (const auto& f : features_of(doc, what))
        a.truth.gois.emplace_back(get<int>(f.at("properties"), "id", what), decode_region(f.at("geometry"), what));
    a.truth.validate();
    return a;
}

// SVL ---------------------------------------------------------------------------------

std::string svl_to_csv(std::span<const SvlEntry> entries) {
    std::ostringstream out;
    out << "t,label,kind\n";
    for (const auto& e : entries) out << e.t << ',' << e.label << ',' << to_string(e.kind) << '\n';
    return out.str();
}

std::vector<SvlEntry> svl_from_csv(std::string_view text) {
    std::vector<SvlEntry> out;
    std::istringstream in{std::string(text)};
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line_no == 1 && line == "t,label,kind") continue;
        if (line.empty()) continue;
        std::istringstream row(line);
        std::string t, label, kind;
        if (!std::getline(row, t, ',') || !std::getline(row, label, ',') || !std::getline(row, kind))
            throw InvalidInput("svl line " + std::to_string(line_no) + ": expected t,label,kind", line_no);
        try {
            out.push_back({std::stoll(t), std::stoll(label), parse_svl_kind(kind)});
        } catch (const std::logic_error&) {
            throw InvalidInput("svl line " + std::to_string(line_no) + ": bad number", line_no);
        }
    }
    return out;
}

std::string svl_to_jsonl(std::span<const SvlEntry> entries) {
    std::string out;
    for (const auto& e : entries)
        out += json{{"t", e.t}, {"label", e.label}, {"kind", std::string(to_string(e.kind))}}.dump() + "\n";
    return out;
}

std::string trajectory_to_csv(const Trajectory& traj) {
    std::ostringstream out;
    write_trajectory_csv(out, traj);
    return out.str();
}

} // namespace goigrid
