#include "goigrid/partition.hpp"

#include "goigrid/error.hpp"
#include "goigrid/format.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <unordered_map>

namespace goigrid {

std::string_view to_string(CellKind k) { return k == CellKind::goi ? "goi" : "filler"; }

CellKind parse_cell_kind(std::string_view name) {
    if (name == "goi") return CellKind::goi;
    if (name == "filler") return CellKind::filler;
    throw InvalidInput("unknown cell kind '" + std::string(name) + "'");
}

std::string_view to_string(Metric m) { return m == Metric::gs ? "GS" : "PCS"; }

Metric parse_metric(std::string_view name) {
    if (name == "GS" || name == "gs") return Metric::gs;
    if (name == "PCS" || name == "pcs") return Metric::pcs;
    throw InvalidInput("unknown metric '" + std::string(name) + "'");
}

// MicroGrid ------------------------------------------------------------------------

namespace {

// Nearest value at or beyond `v` (downwards when `down`) that survives nine-digit text.
double snap(double v, bool down) {
    double r = round_significant(v);
    if (down ? r <= v : r >= v) return r;
    const double unit = std::pow(10.0, std::floor(std::log10(std::abs(r))) - (kSignificantDigits - 1));
    return round_significant(down ? r - unit : r + unit);
}

// Edges are stored at nine significant digits so a written grid reads back unchanged.
std::vector<double> edges(double lo, double hi, double step) {
    auto count = static_cast<std::size_t>(std::ceil((hi - lo) / step));
    count = std::max<std::size_t>(count, 1);
    // Rounding can push the last interior edge onto the boundary.
    while (count > 1 && lo + static_cast<double>(count - 1) * step >= hi) --count;
    std::vector<double> e(count + 1);
    e[0] = lo;
    for (std::size_t k = 1; k < count; ++k) e[k] = round_significant(lo + static_cast<double>(k) * step);
    e[count] = hi;
    return e;
}

std::pair<std::size_t, std::size_t> span_of(const std::vector<double>& e, double step, double lo,
                                            double hi) {
    const std::size_t last = e.size() - 2;
    auto index = [&](double v) {
        const double k = std::floor((v - e.front()) / step);
        if (k <= 0.0) return std::size_t{0};
        return std::min(last, static_cast<std::size_t>(k));
    };
    // One cell of slack either way; callers test exact overlap.
    const std::size_t a = index(lo);
    const std::size_t b = index(hi);
    return {a == 0 ? 0 : a - 1, std::min(last, b + 1)};
}

} // namespace

MicroGrid::MicroGrid(const BoundingBox& bbox, double cell_size)
    : bbox_{snap(bbox.min_x, true), snap(bbox.min_y, true), snap(bbox.max_x, false), snap(bbox.max_y, false)},
      cell_size_(cell_size) {
    if (!(cell_size > 0.0)) throw InvalidInput("cell size must be positive");
    if (!(bbox.width() > 0.0) || !(bbox.height() > 0.0))
        throw InvalidInput("micro-grid needs a bounding box with positive width and height");
    const double nx = std::ceil(bbox.width() / cell_size);
    const double ny = std::ceil(bbox.height() / cell_size);
    if (nx * ny > static_cast<double>(kMaxMicroCells))
        throw InvalidInput("micro-grid would have " + std::to_string(nx * ny) +
                           " cells; increase the cell size");
    xs_ = edges(bbox_.min_x, bbox_.max_x, cell_size);
    ys_ = edges(bbox_.min_y, bbox_.max_y, cell_size);
}

BoundingBox MicroGrid::cell(std::size_t index) const {
    return cell(index % columns(), index / columns());
}

BoundingBox MicroGrid::cell(std::size_t column, std::size_t row) const {
    return {xs_[column], ys_[row], xs_[column + 1], ys_[row + 1]};
}

std::pair<std::size_t, std::size_t> MicroGrid::column_span(double lo, double hi) const {
    return span_of(xs_, cell_size_, lo, hi);
}

std::pair<std::size_t, std::size_t> MicroGrid::row_span(double lo, double hi) const {
    return span_of(ys_, cell_size_, lo, hi);
}

MicroGrid build_micro_grid(const BoundingBox& bbox, double cell_size) {
    return MicroGrid(bbox, cell_size);
}

// Cell assignment --------------------------------------------------------------------

GoiGrid assign_cells(const MicroGrid& micro, std::span<const Destination> destinations,
                     Metric metric) {
    if (destinations.empty()) throw InvalidInput("cell assignment needs at least one destination");

    std::vector<const Destination*> ordered;
    for (const auto& d : destinations) ordered.push_back(&d);
    std::sort(ordered.begin(), ordered.end(),
              [](const Destination* a, const Destination* b) { return a->id < b->id; });
    for (std::size_t k = 1; k < ordered.size(); ++k)
        if (ordered[k]->id == ordered[k - 1]->id)
            throw InvalidInput("duplicate destination id " + std::to_string(ordered[k]->id));

    GoiGrid grid;
    grid.metric = metric;
    grid.labels.assign(micro.size(), GoiGrid::kUnlabeled);
    std::unordered_map<std::size_t, double> best;

    // Destinations arrive in ascending id order, so a strict improvement test
    // leaves ties with the smaller id.
    for (const Destination* d : ordered) {
        if (d->geometry.empty()) continue;
        const double dest_area = area(d->geometry);
        const PlanarPoint dest_centroid = d->geometry.centroid();
        const BoundingBox db = d->geometry.bbox();
        const auto [c0, c1] = micro.column_span(db.min_x, db.max_x);
        const auto [r0, r1] = micro.row_span(db.min_y, db.max_y);
        for (std::size_t r = r0; r <= r1; ++r) {
            for (std::size_t c = c0; c <= c1; ++c) {
                const BoundingBox cell = micro.cell(c, r);
                const double overlap = clipped_area(cell, d->geometry);
                if (overlap <= 0.0) continue;
                double score = 0.0;
                if (metric == Metric::gs) {
                    score = overlap / (cell.area() + dest_area - overlap);
                } else {
                    const PlanarPoint center{0.5 * (cell.min_x + cell.max_x),
                                             0.5 * (cell.min_y + cell.max_y)};
                    const double dist = euclidean_distance(center, dest_centroid);
                    score = dist > 0.0 ? 1.0 / dist : std::numeric_limits<double>::infinity();
                }
                const std::size_t index = r * micro.columns() + c;
                auto [it, fresh] = best.try_emplace(index, score);
                if (fresh || score > it->second) {
                    it->second = score;
                    grid.labels[index] = d->id;
                }
            }
        }
    }

    // Union per destination, from horizontal runs of equally labelled cells.
    std::map<int, std::vector<Region>> runs;
    for (std::size_t r = 0; r < micro.rows(); ++r) {
        std::size_t c = 0;
        while (c < micro.columns()) {
            const int label = grid.labels[r * micro.columns() + c];
            std::size_t end = c + 1;
            while (end < micro.columns() && grid.labels[r * micro.columns() + end] == label) ++end;
            if (label != GoiGrid::kUnlabeled) {
                const BoundingBox first = micro.cell(c, r);
                const BoundingBox last = micro.cell(end - 1, r);
                runs[label].push_back(
                    Region::rectangle({first.min_x, first.min_y, last.max_x, last.max_y}));
            }
            c = end;
        }
    }
    for (auto& [label, rects] : runs) grid.gois.emplace(label, unite_all(std::move(rects)));
    return grid;
}

// FinalGrid ----------------------------------------------------------------------------

FinalGrid::FinalGrid(std::vector<GridCell> cells, const BoundingBox& bbox)
    : cells_(std::move(cells)), bbox_(bbox) {
    std::sort(cells_.begin(), cells_.end(),
              [](const GridCell& a, const GridCell& b) { return a.id < b.id; });
    std::vector<std::pair<SpatialIndex::Id, Region>> entries;
    entries.reserve(cells_.size());
    for (std::size_t k = 0; k < cells_.size(); ++k) {
        const auto& cell = cells_[k];
        if (k > 0 && cell.id == cells_[k - 1].id)
            throw InvalidInput("duplicate cell id " + std::to_string(cell.id));
        if (cell.geometry.empty() || area(cell.geometry) <= 0.0)
            throw InvalidInput("cell " + std::to_string(cell.id) + " has no area");
        if ((cell.kind == CellKind::goi) != cell.source_destination.has_value())
            throw InvalidInput("cell " + std::to_string(cell.id) +
                               ": goi cells and only goi cells carry a source destination");
        entries.emplace_back(cell.id, cell.geometry);
    }
    lookup_ = SpatialIndex(std::move(entries));
}

const GridCell& FinalGrid::cell(CellId id) const {
    auto it = std::lower_bound(cells_.begin(), cells_.end(), id,
                               [](const GridCell& c, CellId v) { return c.id < v; });
    if (it == cells_.end() || it->id != id) throw InvalidInput("no cell " + std::to_string(id));
    return *it;
}

std::optional<CellId> FinalGrid::locate(const PlanarPoint& p) const {
    const auto ids = lookup_.query_point(p);
    if (ids.empty()) return std::nullopt;
    return ids.front();
}

FinalGrid build_final_grid(const GoiGrid& goi, const MicroGrid& micro) {
    if (goi.labels.size() != micro.size())
        throw InvalidInput("GOI grid was not built from this micro-grid");
    std::vector<GridCell> cells;
    CellId next = 0;
    for (const auto& [dest, region] : goi.gois) {
        cells.push_back({dest, region, CellKind::goi, dest});
        next = std::max<CellId>(next, dest + 1);
    }
    for (std::size_t k = 0; k < micro.size(); ++k)
        if (goi.labels[k] == GoiGrid::kUnlabeled)
            cells.push_back({next++, Region::rectangle(micro.cell(k)), CellKind::filler, std::nullopt});
    return FinalGrid(std::move(cells), micro.bbox());
}

// Validation ---------------------------------------------------------------------------

PartitionReport validate_partition(const FinalGrid& grid, const Trajectory& traj) {
    PartitionReport report;
    const auto& cells = grid.cells();
    const auto& index = grid.lookup();

    long double overlap_sum = 0.0L;
    long double covered_sum = 0.0L;
    for (const auto& cell : cells) {
        covered_sum += clipped_area(grid.bbox(), cell.geometry);
        for (CellId other : index.query_candidates(cell.geometry.bbox())) {
            if (other <= cell.id) continue;
            const double overlap = intersection_area(cell.geometry, grid.cell(other).geometry);
            overlap_sum += overlap;
            report.max_overlap_area = std::max(report.max_overlap_area, overlap);
        }
    }
    const long double box_area = static_cast<long double>(grid.bbox().width()) *
                                 static_cast<long double>(grid.bbox().height());
    report.uncovered_area =
        static_cast<double>(std::max(0.0L, box_area - covered_sum + overlap_sum));

    for (const auto& tp : traj.points()) {
        ++report.points_checked;
        const auto covering = index.query_point(tp.p);
        std::size_t interior = 0;
        for (CellId id : covering)
            if (contains_interior(grid.cell(id).geometry, tp.p)) ++interior;
        if (covering.empty() || interior > 1) ++report.points_not_in_one_cell;
    }
    return report;
}

} // namespace goigrid
