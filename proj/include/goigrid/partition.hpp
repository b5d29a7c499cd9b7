#pragma once

#include "goigrid/destinations.hpp"
#include "goigrid/geometry.hpp"
#include "goigrid/trajectory.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

namespace goigrid {

using CellId = std::int64_t;

inline constexpr std::size_t kMaxMicroCells = 100'000'000;
/// Overlap and coverage tolerance of a valid partition, square meters.
inline constexpr double kPartitionTolerance = 1e-3;

enum class CellKind { goi, filler };
enum class Metric { gs, pcs };

std::string_view to_string(CellKind k);
CellKind parse_cell_kind(std::string_view name);
std::string_view to_string(Metric m);
Metric parse_metric(std::string_view name);

struct GridCell {
    CellId id = 0;
    Region geometry;
    CellKind kind = CellKind::filler;
    std::optional<int> source_destination; ///< set for goi cells only
};

/// Uniform grid over a bounding box; the last row and column are clipped to it.
/// The box is widened to the nearest nine-significant-digit values and interior
/// edges are rounded likewise, so the grid survives text serialization exactly.
class MicroGrid {
public:
    MicroGrid(const BoundingBox& bbox, double cell_size);

    const BoundingBox& bbox() const { return bbox_; }
    double cell_size() const { return cell_size_; }
    std::size_t columns() const { return xs_.size() - 1; }
    std::size_t rows() const { return ys_.size() - 1; }
    std::size_t size() const { return columns() * rows(); }

    /// Row-major cell rectangle.
    BoundingBox cell(std::size_t index) const;
    BoundingBox cell(std::size_t column, std::size_t row) const;
    /// Inclusive column/row index span of cells whose rectangles meet `box`.
    std::pair<std::size_t, std::size_t> column_span(double lo, double hi) const;
    std::pair<std::size_t, std::size_t> row_span(double lo, double hi) const;

private:
    BoundingBox bbox_;
    double cell_size_;
    std::vector<double> xs_;
    std::vector<double> ys_;
};

MicroGrid build_micro_grid(const BoundingBox& bbox, double cell_size);

/// Micro cells labelled with their most similar destination, and the union of
/// each destination's cells.
struct GoiGrid {
    static constexpr int kUnlabeled = -1;

    Metric metric = Metric::gs;
    std::vector<int> labels;          ///< destination id per micro cell
    std::map<int, Region> gois;       ///< destination id -> union of its cells
};

/// Labels every micro cell that overlaps a destination with positive area by the
/// destination maximising the metric: GS is cell/destination Jaccard, PCS the
/// reciprocal centroid distance among overlapping destinations. Ties go to the
/// smallest destination id.
GoiGrid assign_cells(const MicroGrid& micro, std::span<const Destination> destinations, Metric metric);

/// GOIs plus the micro cells no destination claimed; mutually disjoint and covering the box.
class FinalGrid {
public:
    FinalGrid() = default;
    FinalGrid(std::vector<GridCell> cells, const BoundingBox& bbox);

    const std::vector<GridCell>& cells() const { return cells_; }
    const BoundingBox& bbox() const { return bbox_; }
    const SpatialIndex& lookup() const { return lookup_; }
    const GridCell& cell(CellId id) const;

    /// Smallest-id cell containing or touching `p`; empty outside every cell.
    std::optional<CellId> locate(const PlanarPoint& p) const;

private:
    std::vector<GridCell> cells_; ///< ascending id
    BoundingBox bbox_;
    SpatialIndex lookup_;
};

/// GOI cells keep their destination's id; filler ids continue after the largest one.
FinalGrid build_final_grid(const GoiGrid& goi, const MicroGrid& micro);

struct PartitionReport {
    double max_overlap_area = 0.0;
    /// Box area not covered by any cell (an upper bound; exact when cells are disjoint).
    double uncovered_area = 0.0;
    std::size_t points_not_in_one_cell = 0;
    std::size_t points_checked = 0;

    bool disjoint() const { return max_overlap_area < kPartitionTolerance; }
    bool covering() const { return uncovered_area < kPartitionTolerance; }
    bool passes() const { return disjoint() && covering() && points_not_in_one_cell == 0; }
};

PartitionReport validate_partition(const FinalGrid& grid, const Trajectory& traj);

} // namespace goigrid
