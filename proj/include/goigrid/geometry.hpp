#pragma once

#include <boost/geometry.hpp>
#include <boost/geometry/geometries/register/point.hpp>
#include <boost/geometry/index/rtree.hpp>

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

namespace goigrid {

/// Position in the local planar frame, meters east/north of the projection origin.
struct PlanarPoint {
    double x = 0.0;
    double y = 0.0;

    friend bool operator==(const PlanarPoint&, const PlanarPoint&) = default;
};

struct LatLon {
    double lat = 0.0;
    double lon = 0.0;

    friend bool operator==(const LatLon&, const LatLon&) = default;
};

} // namespace goigrid

BOOST_GEOMETRY_REGISTER_POINT_2D(goigrid::PlanarPoint, double, boost::geometry::cs::cartesian, x, y)

namespace goigrid {

// Counter-clockwise outer rings, closed.
using Ring = boost::geometry::model::ring<PlanarPoint, false, true>;
using Polygon = boost::geometry::model::polygon<PlanarPoint, false, true>;
using MultiPolygon = boost::geometry::model::multi_polygon<Polygon>;

inline constexpr double kEarthRadius = 6371008.8;
/// Boolean-operation results with less area than this are treated as empty.
inline constexpr double kSliverArea = 1e-6;
inline constexpr int kArcSegmentsPerQuarter = 16;

struct BoundingBox {
    double min_x = 0.0;
    double min_y = 0.0;
    double max_x = 0.0;
    double max_y = 0.0;

    double width() const { return max_x - min_x; }
    double height() const { return max_y - min_y; }
    double area() const { return width() * height(); }
    bool contains(const PlanarPoint& p) const {
        return p.x >= min_x && p.x <= max_x && p.y >= min_y && p.y <= max_y;
    }
    bool intersects(const BoundingBox& o) const {
        return min_x <= o.max_x && o.min_x <= max_x && min_y <= o.max_y && o.min_y <= max_y;
    }
    void expand(const PlanarPoint& p);

    static BoundingBox of_point(const PlanarPoint& p) { return {p.x, p.y, p.x, p.y}; }

    friend bool operator==(const BoundingBox&, const BoundingBox&) = default;
};

/// A planar polygon or multipolygon (outer rings with optional holes).
///
/// A Region is always normalized: rings are closed and counter-clockwise
/// (holes clockwise) and polygons thinner than the sliver threshold are dropped.
class Region {
public:
    Region() = default;
    explicit Region(MultiPolygon polygons);

    static Region rectangle(const BoundingBox& box);
    /// Builds a single polygon from an outer ring; orientation and closure are fixed up.
    static Region from_ring(std::span<const PlanarPoint> outer);

    const MultiPolygon& polygons() const { return polygons_; }
    bool empty() const { return polygons_.empty(); }
    BoundingBox bbox() const;
    /// Area-weighted centroid. Requires a non-empty region.
    PlanarPoint centroid() const;
    /// Returns the box when the region is exactly one axis-aligned rectangle.
    std::optional<BoundingBox> as_box() const;

    friend bool operator==(const Region& a, const Region& b);

private:
    MultiPolygon polygons_;
};

/// Vertices of a convex hull in counter-clockwise order, without closure.
/// One vertex for a single point; two for a collinear set.
struct ConvexHull {
    std::vector<PlanarPoint> vertices;

    bool degenerate() const { return vertices.size() < 3; }
    /// Polygon of a non-degenerate hull.
    Region to_region() const;
};

// Projection -----------------------------------------------------------------

/// Local equirectangular projection around `origin`.
PlanarPoint project(const LatLon& position, const LatLon& origin);
LatLon unproject(const PlanarPoint& p, const LatLon& origin);
bool valid_lat_lon(const LatLon& position);

// Constructions ----------------------------------------------------------------

ConvexHull convex_hull(std::span<const PlanarPoint> points);
Region buffer(const ConvexHull& hull, double width);
Region buffer(const Region& region, double width);

// Measures and boolean operations ------------------------------------------------

double area(const Region& r);
Region intersection(const Region& a, const Region& b);
Region unite(const Region& a, const Region& b);
/// Union of many regions, merged pairwise in a balanced tree.
Region unite_all(std::vector<Region> regions);
double intersection_area(const Region& a, const Region& b);
/// Exact area of `region` clipped to `box`.
double clipped_area(const BoundingBox& box, const Region& region);
/// Area(a∩b) / Area(a∪b). Throws InvalidInput when both areas are zero.
double jaccard(const Region& a, const Region& b);
/// True on positive-area overlap or boundary contact.
bool intersects(const Region& a, const Region& b);
/// True when `p` lies inside the region or on its boundary.
bool covers(const Region& r, const PlanarPoint& p);
/// True when `p` lies strictly inside the region.
bool contains_interior(const Region& r, const PlanarPoint& p);

double euclidean_distance(const PlanarPoint& p, const PlanarPoint& q);

// Spatial index -----------------------------------------------------------------

/// Immutable R-tree over (id, Region) entries. Queries re-check candidates
/// against exact geometry, so results never contain false positives.
class SpatialIndex {
public:
    using Id = std::int64_t;

    SpatialIndex() = default;
    explicit SpatialIndex(std::vector<std::pair<Id, Region>> entries);

    std::size_t size() const { return entries_.size(); }
    bool empty() const { return entries_.empty(); }
    const Region& region(std::size_t slot) const { return entries_[slot].second; }
    Id id(std::size_t slot) const { return entries_[slot].first; }

    /// Ids of entries intersecting `probe` (overlap or boundary contact), ascending.
    std::vector<Id> query(const Region& probe) const;
    /// Ids of entries whose bounding boxes intersect `box`, ascending. Not re-checked.
    std::vector<Id> query_candidates(const BoundingBox& box) const;
    /// Ids of entries covering `p` (inside or on boundary), ascending.
    std::vector<Id> query_point(const PlanarPoint& p) const;

private:
    using Box = boost::geometry::model::box<PlanarPoint>;
    using Value = std::pair<Box, std::size_t>;

    std::vector<std::size_t> slots_in(const Box& box) const;

    std::vector<std::pair<Id, Region>> entries_;
    boost::geometry::index::rtree<Value, boost::geometry::index::rstar<16>> tree_;
};

SpatialIndex index_build(std::vector<std::pair<SpatialIndex::Id, Region>> entries);
std::vector<SpatialIndex::Id> index_query(const SpatialIndex& index, const Region& probe);

} // namespace goigrid
