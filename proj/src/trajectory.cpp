#include "goigrid/trajectory.hpp"

#include "goigrid/error.hpp"
#include "goigrid/format.hpp"

#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

namespace goigrid {

namespace {

void check_ordering(const std::vector<TrackPoint>& points) {
    for (std::size_t i = 1; i < points.size(); ++i) {
        if (points[i].t == points[i - 1].t)
            throw InvalidInput("duplicate timestamp " + std::to_string(points[i].t) +
                                   " at records " + std::to_string(i - 1) + " and " +
                                   std::to_string(i),
                               i);
        if (points[i].t < points[i - 1].t)
            throw InvalidInput("timestamps not increasing at record " + std::to_string(i) + " (" +
                                   std::to_string(points[i].t) + " after " +
                                   std::to_string(points[i - 1].t) + ")",
                               i);
    }
}

std::string trim(std::string_view s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string_view::npos) return {};
    const auto e = s.find_last_not_of(" \t\r\n");
    return std::string(s.substr(b, e - b + 1));
}

template <typename T>
bool parse_number(const std::string& text, T& out) {
    const char* end = text.data() + text.size();
    auto [ptr, ec] = std::from_chars(text.data(), end, out);
    return ec == std::errc() && ptr == end;
}

} // namespace

Trajectory::Trajectory(std::vector<TrackPoint> points, LatLon origin)
    : origin_(origin) {
    check_ordering(points);
    points_ = compute_time_values(std::move(points));
}

LatLon default_origin(std::span<const RawRecord> records) {
    if (records.empty()) throw InvalidInput("no records");
    double lat = 0.0;
    double lon = 0.0;
    for (const auto& r : records) {
        lat += r.position.lat;
        lon += r.position.lon;
    }
    const double n = static_cast<double>(records.size());
    return {lat / n, lon / n};
}

Trajectory ingest(std::span<const RawRecord> records) {
    if (records.empty()) throw InvalidInput("trajectory needs at least one record");
    for (std::size_t i = 0; i < records.size(); ++i)
        if (!valid_lat_lon(records[i].position))
            throw InvalidInput("coordinates out of range at record " + std::to_string(i), i);
    return ingest(records, default_origin(records));
}

Trajectory ingest(std::span<const RawRecord> records, const LatLon& origin) {
    if (records.empty()) throw InvalidInput("trajectory needs at least one record");
    if (!valid_lat_lon(origin)) throw InvalidInput("projection origin out of range");
    std::vector<TrackPoint> points;
    points.reserve(records.size());
    for (std::size_t i = 0; i < records.size(); ++i) {
        if (!valid_lat_lon(records[i].position))
            throw InvalidInput("coordinates out of range at record " + std::to_string(i), i);
        points.push_back({records[i].t, project(records[i].position, origin), 0});
    }
    return Trajectory(std::move(points), origin);
}

std::vector<RawRecord> read_records_csv(std::istream& in) {
    std::vector<RawRecord> records;
    std::string line;
    std::size_t line_no = 0;
    bool first_data_line = true;
    while (std::getline(in, line)) {
        ++line_no;
        const std::string text = trim(line);
        if (text.empty() || text.front() == '#') continue;

        std::vector<std::string> fields;
        std::stringstream ss(text);
        for (std::string f; std::getline(ss, f, ',');) fields.push_back(trim(f));

        Timestamp t = 0;
        const bool numeric_first = !fields.empty() && parse_number(fields[0], t);
        if (first_data_line && !numeric_first) {
            first_data_line = false;
            continue; // header
        }
        first_data_line = false;

        RawRecord r;
        if (fields.size() != 3 || !numeric_first || !parse_number(fields[1], r.position.lat) ||
            !parse_number(fields[2], r.position.lon))
            throw InvalidInput("unparseable record on line " + std::to_string(line_no), line_no);
        r.t = t;
        records.push_back(r);
    }
    return records;
}

std::vector<RawRecord> read_records_csv_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InvalidInput("cannot open trajectory file " + path);
    return read_records_csv(in);
}

void write_trajectory_csv(std::ostream& out, const Trajectory& traj) {
    out << "t,lat,lon\n";
    for (const auto& p : traj.points()) {
        const LatLon ll = unproject(p.p, traj.origin());
        out << p.t << ',' << format_number(ll.lat) << ',' << format_number(ll.lon) << '\n';
    }
}

std::vector<TrackPoint> compute_time_values(std::vector<TrackPoint> points) {
    for (std::size_t i = 0; i + 1 < points.size(); ++i) points[i].tv = points[i + 1].t - points[i].t;
    if (!points.empty()) points.back().tv = 0;
    return points;
}

PlanarPoint centroid(std::span<const TrackPoint> points) {
    if (points.empty()) throw InvalidInput("centroid of an empty point set");
    double sx = 0.0;
    double sy = 0.0;
    for (const auto& p : points) {
        sx += p.p.x;
        sy += p.p.y;
    }
    const double n = static_cast<double>(points.size());
    return {sx / n, sy / n};
}

PlanarPoint time_weighted_centroid(std::span<const TrackPoint> points) {
    if (points.empty()) throw InvalidInput("time-weighted centroid of an empty point set");
    double sx = 0.0;
    double sy = 0.0;
    double sw = 0.0;
    for (const auto& p : points) {
        const double w = static_cast<double>(p.tv);
        sx += p.p.x * w;
        sy += p.p.y * w;
        sw += w;
    }
    if (sw <= 0.0) return centroid(points);
    return {sx / sw, sy / sw};
}

BoundingBox mbr(std::span<const TrackPoint> points) {
    if (points.empty()) throw InvalidInput("bounding box of an empty point set");
    BoundingBox box = BoundingBox::of_point(points.front().p);
    for (const auto& p : points) box.expand(p.p);
    return box;
}

} // namespace goigrid
