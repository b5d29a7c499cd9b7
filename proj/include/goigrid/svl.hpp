#pragma once

#include "goigrid/destinations.hpp"
#include "goigrid/partition.hpp"
#include "goigrid/trajectory.hpp"

#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

namespace goigrid {

enum class SvlKind { goi, filler, destination };

std::string_view to_string(SvlKind k);
SvlKind parse_svl_kind(std::string_view name);

/// One visited location. GOI labels are destination ids (a GOI cell shares its
/// destination's id); filler labels are final-grid cell ids.
struct SvlEntry {
    Timestamp t = 0;
    std::int64_t label = 0;
    SvlKind kind = SvlKind::goi;

    friend bool operator==(const SvlEntry&, const SvlEntry&) = default;
};

enum class LabelStrategy { intersection, nnq };

LabelStrategy parse_label_strategy(std::string_view name);
std::string_view to_string(LabelStrategy s);

/// Labels each fix with the final-grid cell that contains it. Fixes outside the
/// grid box are rejected with their index.
std::vector<SvlEntry> label_by_intersection(const Trajectory& traj, const FinalGrid& grid,
                                            bool collapse = false);

/// Labels each fix with the destination whose geometry centroid is nearest.
std::vector<SvlEntry> label_by_nnq(const Trajectory& traj, std::span<const Destination> destinations,
                                   bool collapse = false);

/// Drops entries repeating the previous entry's label and kind.
std::vector<SvlEntry> collapse_repeats(std::span<const SvlEntry> entries);

} // namespace goigrid
