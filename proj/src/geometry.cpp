#include "goigrid/geometry.hpp"

#include "goigrid/error.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace bg = boost::geometry;
namespace bgi = boost::geometry::index;

namespace goigrid {

namespace {

constexpr double kDegToRad = std::numbers::pi / 180.0;
constexpr int kPointsPerCircle = 4 * kArcSegmentsPerQuarter;

double ring_area(const std::vector<PlanarPoint>& pts) {
    // Shoelace over an open or closed vertex list.
    double sum = 0.0;
    const std::size_t n = pts.size();
    for (std::size_t i = 0; i < n; ++i) {
        const auto& a = pts[i];
        const auto& b = pts[(i + 1) % n];
        sum += a.x * b.y - b.x * a.y;
    }
    return 0.5 * sum;
}

// Sutherland-Hodgman against one half-plane of an axis-aligned box.
// `axis` 0 = x, 1 = y; keeps points with sign*(coord - bound) <= 0.
std::vector<PlanarPoint> clip_half(const std::vector<PlanarPoint>& in, int axis, double bound,
                                   double sign) {
    std::vector<PlanarPoint> out;
    if (in.empty()) return out;
    out.reserve(in.size() + 4);
    auto coord = [axis](const PlanarPoint& p) { return axis == 0 ? p.x : p.y; };
    auto inside = [&](const PlanarPoint& p) { return sign * (coord(p) - bound) <= 0.0; };
    auto cross = [&](const PlanarPoint& a, const PlanarPoint& b) {
        const double t = (bound - coord(a)) / (coord(b) - coord(a));
        PlanarPoint r{a.x + t * (b.x - a.x), a.y + t * (b.y - a.y)};
        if (axis == 0) r.x = bound; else r.y = bound;
        return r;
    };
    PlanarPoint prev = in.back();
    bool prev_in = inside(prev);
    for (const auto& cur : in) {
        const bool cur_in = inside(cur);
        if (cur_in) {
            if (!prev_in) out.push_back(cross(prev, cur));
            out.push_back(cur);
        } else if (prev_in) {
            out.push_back(cross(prev, cur));
        }
        prev = cur;
        prev_in = cur_in;
    }
    return out;
}

double clipped_ring_area(const Ring& ring, const BoundingBox& box) {
    std::vector<PlanarPoint> pts(ring.begin(), ring.end());
    if (pts.size() > 1 && pts.front() == pts.back()) pts.pop_back();
    pts = clip_half(pts, 0, box.min_x, -1.0);
    pts = clip_half(pts, 0, box.max_x, 1.0);
    pts = clip_half(pts, 1, box.min_y, -1.0);
    pts = clip_half(pts, 1, box.max_y, 1.0);
    return std::abs(ring_area(pts));
}

bool rings_equal(const Ring& a, const Ring& b) {
    return a.size() == b.size() && std::equal(a.begin(), a.end(), b.begin());
}

MultiPolygon normalized(MultiPolygon mp) {
    MultiPolygon out;
    out.reserve(mp.size());
    for (auto& poly : mp) {
        bg::correct(poly);
        if (std::abs(bg::area(poly)) >= kSliverArea) out.push_back(std::move(poly));
    }
    return out;
}

template <typename Geometry>
Region buffer_geometry(const Geometry& geometry, double width) {
    if (!(width > 0.0)) throw InvalidInput("buffer width must be positive");
    namespace strategy = bg::strategy::buffer;
    MultiPolygon result;
    bg::buffer(geometry, result, strategy::distance_symmetric<double>(width),
               strategy::side_straight(), strategy::join_round(kPointsPerCircle),
               strategy::end_round(kPointsPerCircle), strategy::point_circle(kPointsPerCircle));
    return Region(std::move(result));
}

} // namespace

void BoundingBox::expand(const PlanarPoint& p) {
    min_x = std::min(min_x, p.x);
    min_y = std::min(min_y, p.y);
    max_x = std::max(max_x, p.x);
    max_y = std::max(max_y, p.y);
}

// Region -----------------------------------------------------------------------

Region::Region(MultiPolygon polygons) : polygons_(normalized(std::move(polygons))) {}

Region Region::rectangle(const BoundingBox& box) {
    Polygon poly;
    poly.outer() = {{box.min_x, box.min_y}, {box.max_x, box.min_y}, {box.max_x, box.max_y},
                    {box.min_x, box.max_y}, {box.min_x, box.min_y}};
    return Region(MultiPolygon{poly});
}

Region Region::from_ring(std::span<const PlanarPoint> outer) {
    Polygon poly;
    poly.outer().assign(outer.begin(), outer.end());
    return Region(MultiPolygon{poly});
}

BoundingBox Region::bbox() const {
    if (polygons_.empty()) return {};
    auto env = bg::return_envelope<bg::model::box<PlanarPoint>>(polygons_);
    return {env.min_corner().x, env.min_corner().y, env.max_corner().x, env.max_corner().y};
}

PlanarPoint Region::centroid() const {
    if (polygons_.empty()) throw InvalidInput("centroid of an empty region");
    PlanarPoint c;
    bg::centroid(polygons_, c);
    return c;
}

std::optional<BoundingBox> Region::as_box() const {
    if (polygons_.size() != 1 || !polygons_[0].inners().empty()) return std::nullopt;
    const auto& ring = polygons_[0].outer();
    if (ring.size() != 5) return std::nullopt;
    for (std::size_t i = 0; i + 1 < ring.size(); ++i) {
        const auto& a = ring[i];
        const auto& b = ring[i + 1];
        if (a.x != b.x && a.y != b.y) return std::nullopt;
    }
    BoundingBox box{ring[0].x, ring[0].y, ring[0].x, ring[0].y};
    for (const auto& p : ring) box.expand(p);
    if (box.width() <= 0.0 || box.height() <= 0.0) return std::nullopt;
    return box;
}

bool operator==(const Region& a, const Region& b) {
    const auto& pa = a.polygons_;
    const auto& pb = b.polygons_;
    if (pa.size() != pb.size()) return false;
    for (std::size_t i = 0; i < pa.size(); ++i) {
        if (!rings_equal(pa[i].outer(), pb[i].outer())) return false;
        if (pa[i].inners().size() != pb[i].inners().size()) return false;
        for (std::size_t k = 0; k < pa[i].inners().size(); ++k)
            if (!rings_equal(pa[i].inners()[k], pb[i].inners()[k])) return false;
    }
    return true;
}

Region ConvexHull::to_region() const {
    if (degenerate()) throw InvalidInput("degenerate hull has no polygon");
    return Region::from_ring(vertices);
}

// Projection -------------------------------------------------------------------

bool valid_lat_lon(const LatLon& p) {
    return std::isfinite(p.lat) && std::isfinite(p.lon) && std::abs(p.lat) <= 90.0 &&
           std::abs(p.lon) <= 180.0;
}

PlanarPoint project(const LatLon& position, const LatLon& origin) {
    if (!valid_lat_lon(position) || !valid_lat_lon(origin))
        throw InvalidInput("latitude/longitude out of range");
    const double x = kEarthRadius * std::cos(origin.lat * kDegToRad) *
                     ((position.lon - origin.lon) * kDegToRad);
    const double y = kEarthRadius * ((position.lat - origin.lat) * kDegToRad);
    return {x, y};
}

LatLon unproject(const PlanarPoint& p, const LatLon& origin) {
    const double lat = origin.lat + p.y / kEarthRadius / kDegToRad;
    const double lon =
        origin.lon + p.x / (kEarthRadius * std::cos(origin.lat * kDegToRad)) / kDegToRad;
    return {lat, lon};
}

// Constructions ----------------------------------------------------------------

ConvexHull convex_hull(std::span<const PlanarPoint> points) {
    if (points.empty()) throw InvalidInput("convex hull of an empty point set");
    bg::model::multi_point<PlanarPoint> mp(points.begin(), points.end());
    Ring ring;
    bg::convex_hull(mp, ring);

    std::vector<PlanarPoint> verts(ring.begin(), ring.end());
    if (verts.size() > 1 && verts.front() == verts.back()) verts.pop_back();
    verts.erase(std::unique(verts.begin(), verts.end()), verts.end());

    if (verts.size() >= 3 && std::abs(ring_area(verts)) > 0.0) return {std::move(verts)};

    // Single point or collinear set: keep the two extreme points.
    auto lex = [](const PlanarPoint& a, const PlanarPoint& b) {
        return a.x < b.x || (a.x == b.x && a.y < b.y);
    };
    auto [lo, hi] = std::minmax_element(points.begin(), points.end(), lex);
    if (*lo == *hi) return {{*lo}};
    return {{*lo, *hi}};
}

Region buffer(const ConvexHull& hull, double width) {
    if (hull.vertices.empty()) throw InvalidInput("buffer of an empty hull");
    if (hull.vertices.size() == 1) return buffer_geometry(hull.vertices.front(), width);
    if (hull.vertices.size() == 2) {
        bg::model::linestring<PlanarPoint> line(hull.vertices.begin(), hull.vertices.end());
        return buffer_geometry(line, width);
    }
    return buffer(hull.to_region(), width);
}

Region buffer(const Region& region, double width) {
    return buffer_geometry(region.polygons(), width);
}

// Measures ---------------------------------------------------------------------

double area(const Region& r) { return bg::area(r.polygons()); }

Region intersection(const Region& a, const Region& b) {
    if (a.empty() || b.empty() || !a.bbox().intersects(b.bbox())) return {};
    MultiPolygon out;
    bg::intersection(a.polygons(), b.polygons(), out);
    return Region(std::move(out));
}

Region unite(const Region& a, const Region& b) {
    if (a.empty()) return b;
    if (b.empty()) return a;
    MultiPolygon out;
    bg::union_(a.polygons(), b.polygons(), out);
    return Region(std::move(out));
}

Region unite_all(std::vector<Region> regions) {
    if (regions.empty()) return {};
    while (regions.size() > 1) {
        std::vector<Region> next;
        next.reserve((regions.size() + 1) / 2);
        for (std::size_t i = 0; i + 1 < regions.size(); i += 2)
            next.push_back(unite(regions[i], regions[i + 1]));
        if (regions.size() % 2 == 1) next.push_back(std::move(regions.back()));
        regions = std::move(next);
    }
    return std::move(regions.front());
}

double clipped_area(const BoundingBox& box, const Region& region) {
    if (region.empty() || !box.intersects(region.bbox())) return 0.0;
    double total = 0.0;
    for (const auto& poly : region.polygons()) {
        total += clipped_ring_area(poly.outer(), box);
        for (const auto& hole : poly.inners()) total -= clipped_ring_area(hole, box);
    }
    return total < kSliverArea ? 0.0 : total;
}

double intersection_area(const Region& a, const Region& b) {
    if (a.empty() || b.empty()) return 0.0;
    const BoundingBox ba = a.bbox();
    const BoundingBox bb = b.bbox();
    if (!ba.intersects(bb)) return 0.0;
    const auto box_a = a.as_box();
    const auto box_b = b.as_box();
    if (box_a && box_b) {
        const double w = std::min(box_a->max_x, box_b->max_x) - std::max(box_a->min_x, box_b->min_x);
        const double h = std::min(box_a->max_y, box_b->max_y) - std::max(box_a->min_y, box_b->min_y);
        const double overlap = std::max(0.0, w) * std::max(0.0, h);
        return overlap < kSliverArea ? 0.0 : overlap;
    }
    if (box_a) return clipped_area(*box_a, b);
    if (box_b) return clipped_area(*box_b, a);
    return area(intersection(a, b));
}

double jaccard(const Region& a, const Region& b) {
    const double area_a = area(a);
    const double area_b = area(b);
    if (area_a <= 0.0 && area_b <= 0.0)
        throw InvalidInput("jaccard similarity of two empty regions is undefined");
    if (a == b) return 1.0;
    const double inter = intersection_area(a, b);
    const double uni = area_a + area_b - inter;
    return std::clamp(inter / uni, 0.0, 1.0);
}

bool intersects(const Region& a, const Region& b) {
    if (a.empty() || b.empty() || !a.bbox().intersects(b.bbox())) return false;
    if (a.as_box() && b.as_box()) return true;
    return bg::intersects(a.polygons(), b.polygons());
}

bool covers(const Region& r, const PlanarPoint& p) {
    if (r.empty() || !r.bbox().contains(p)) return false;
    return bg::covered_by(p, r.polygons());
}

bool contains_interior(const Region& r, const PlanarPoint& p) {
    if (r.empty() || !r.bbox().contains(p)) return false;
    return bg::within(p, r.polygons());
}

double euclidean_distance(const PlanarPoint& p, const PlanarPoint& q) {
    return std::hypot(p.x - q.x, p.y - q.y);
}

// Spatial index ----------------------------------------------------------------

SpatialIndex::SpatialIndex(std::vector<std::pair<Id, Region>> entries)
    : entries_(std::move(entries)) {
    std::vector<Value> values;
    values.reserve(entries_.size());
    for (std::size_t slot = 0; slot < entries_.size(); ++slot) {
        if (entries_[slot].second.empty()) continue;
        const BoundingBox b = entries_[slot].second.bbox();
        values.emplace_back(Box({b.min_x, b.min_y}, {b.max_x, b.max_y}), slot);
    }
    tree_ = decltype(tree_)(values.begin(), values.end());
}

std::vector<std::size_t> SpatialIndex::slots_in(const Box& box) const {
    std::vector<Value> hits;
    tree_.query(bgi::intersects(box), std::back_inserter(hits));
    std::vector<std::size_t> slots;
    slots.reserve(hits.size());
    for (const auto& h : hits) slots.push_back(h.second);
    return slots;
}

namespace {
std::vector<SpatialIndex::Id> sorted_ids(std::vector<SpatialIndex::Id> ids) {
    std::sort(ids.begin(), ids.end());
    return ids;
}
} // namespace

std::vector<SpatialIndex::Id> SpatialIndex::query(const Region& probe) const {
    if (probe.empty() || entries_.empty()) return {};
    const BoundingBox b = probe.bbox();
    std::vector<Id> ids;
    for (std::size_t slot : slots_in(Box({b.min_x, b.min_y}, {b.max_x, b.max_y})))
        if (intersects(entries_[slot].second, probe)) ids.push_back(entries_[slot].first);
    return sorted_ids(std::move(ids));
}

std::vector<SpatialIndex::Id> SpatialIndex::query_candidates(const BoundingBox& b) const {
    std::vector<Id> ids;
    for (std::size_t slot : slots_in(Box({b.min_x, b.min_y}, {b.max_x, b.max_y})))
        ids.push_back(entries_[slot].first);
    return sorted_ids(std::move(ids));
}

std::vector<SpatialIndex::Id> SpatialIndex::query_point(const PlanarPoint& p) const {
    std::vector<Id> ids;
    for (std::size_t slot : slots_in(Box(p, p)))
        if (covers(entries_[slot].second, p)) ids.push_back(entries_[slot].first);
    return sorted_ids(std::move(ids));
}

SpatialIndex index_build(std::vector<std::pair<SpatialIndex::Id, Region>> entries) {
    if (entries.empty()) throw InvalidInput("spatial index needs at least one entry");
    return SpatialIndex(std::move(entries));
}

std::vector<SpatialIndex::Id> index_query(const SpatialIndex& index, const Region& probe) {
    return index.query(probe);
}

} // namespace goigrid
