#pragma once

#include "goigrid/geometry.hpp"

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace goigrid {

using Timestamp = std::int64_t;

struct TrackPoint {
    Timestamp t = 0;
    PlanarPoint p;
    /// Time-value: gap to the successor fix in seconds, 0 for the last fix.
    std::int64_t tv = 0;

    friend bool operator==(const TrackPoint&, const TrackPoint&) = default;
};

struct RawRecord {
    Timestamp t = 0;
    LatLon position;
};

/// Time-ordered planar fixes of one moving object, with strictly increasing timestamps.
class Trajectory {
public:
    Trajectory() = default;
    /// Validates ordering and fills time-values.
    Trajectory(std::vector<TrackPoint> points, LatLon origin);

    const std::vector<TrackPoint>& points() const { return points_; }
    const LatLon& origin() const { return origin_; }
    std::size_t size() const { return points_.size(); }
    bool empty() const { return points_.empty(); }
    const TrackPoint& operator[](std::size_t i) const { return points_[i]; }

private:
    std::vector<TrackPoint> points_;
    LatLon origin_;
};

/// Mean latitude/longitude of the records.
LatLon default_origin(std::span<const RawRecord> records);

/// Projects and validates records. Out-of-order or duplicate timestamps are
/// rejected, never re-sorted.
Trajectory ingest(std::span<const RawRecord> records);
Trajectory ingest(std::span<const RawRecord> records, const LatLon& origin);

/// Parses `t,lat,lon` lines. `#` comments and a leading header are skipped.
std::vector<RawRecord> read_records_csv(std::istream& in);
std::vector<RawRecord> read_records_csv_file(const std::string& path);
void write_trajectory_csv(std::ostream& out, const Trajectory& traj);

/// tv_i = t_{i+1} - t_i; the final fix gets 0.
std::vector<TrackPoint> compute_time_values(std::vector<TrackPoint> points);

PlanarPoint centroid(std::span<const TrackPoint> points);
/// Weighted mean of positions by time-value; plain centroid when every weight is zero.
PlanarPoint time_weighted_centroid(std::span<const TrackPoint> points);
BoundingBox mbr(std::span<const TrackPoint> points);
inline BoundingBox mbr(const Trajectory& traj) { return mbr(traj.points()); }

} // namespace goigrid
