#pragma once

#include "goigrid/geometry.hpp"
#include "goigrid/trajectory.hpp"

#include <cstddef>
#include <string_view>
#include <vector>

namespace goigrid {

struct StayParams {
    double d_max = 100.0;        ///< roaming radius, meters
    double t_min = 3600.0;       ///< minimum dwell, seconds
    double buffer_width = 10.0;  ///< noise buffer around the hull, meters
    double diam_max = 200.0;     ///< diameter extractor only, meters

    void validate() const;
};

struct Stay {
    int id = 0;
    Region g;                    ///< buffered convex hull of ps
    std::vector<TrackPoint> ps;  ///< contiguous run of the source trajectory
    PlanarPoint c;               ///< centroid of g
    Timestamp at = 0;            ///< arrival
    Timestamp dt = 0;            ///< departure
    std::size_t first_index = 0; ///< index of ps.front() in the trajectory

    std::size_t last_index() const { return first_index + ps.size() - 1; }
};

enum class StayMethod { twc, reference_point, diameter };

std::string_view to_string(StayMethod m);
StayMethod parse_stay_method(std::string_view name);

struct TwcStats {
    /// Fixes admitted to a working set although farther than d_max from its
    /// time-weighted centroid (the dwell had not yet reached t_min).
    std::size_t out_of_radius_admissions = 0;
};

/// Time-weighted-centroid stay extraction.
///
/// The working set is seeded with fix i and grown fix by fix. A fix farther
/// than d_max from the set's time-weighted centroid closes the stay when
/// (t_j + tv_j) - t_i >= t_min; otherwise it is still admitted. Arrival is t_i
/// and departure t_j + tv_j, so a single fix followed by a long gap is a stay.
std::vector<Stay> extract_stays_twc(const Trajectory& traj, const StayParams& params,
                                    TwcStats* stats = nullptr);

/// Baseline with the first fix of the candidate as a fixed reference point.
std::vector<Stay> extract_stays_reference_point(const Trajectory& traj, const StayParams& params);

/// Baseline bounding the candidate's point-set diameter by diam_max.
std::vector<Stay> extract_stays_diameter(const Trajectory& traj, const StayParams& params);

std::vector<Stay> extract_stays(const Trajectory& traj, const StayParams& params, StayMethod method);

/// Assembles a stay over traj[first..last]: buffered hull geometry and its centroid.
Stay make_stay(int id, const Trajectory& traj, std::size_t first, std::size_t last, Timestamp at,
               Timestamp dt, double buffer_width);

} // namespace goigrid
