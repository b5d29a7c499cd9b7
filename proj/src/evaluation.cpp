#include "goigrid/evaluation.hpp"

#include "goigrid/error.hpp"

#include <set>
#include <string>

namespace goigrid {

void GroundTruth::validate() const {
    std::set<int> ids;
    for (const auto& [id, region] : gois) {
        if (!ids.insert(id).second) throw InvalidInput("duplicate ground-truth id " + std::to_string(id));
        if (!(area(region) > 0.0))
            throw InvalidInput("ground-truth GOI " + std::to_string(id) + " has no area");
    }
}

double geometric_similarity(const GroundTruth& truth, std::span<const Region> estimated) {
    if (truth.gois.empty()) throw InvalidInput("geometric similarity needs at least one real GOI");
    truth.validate();
    double total = 0.0;
    for (const auto& [id, real] : truth.gois)
        for (const auto& g : estimated)
            if (!g.empty()) total += jaccard(real, g);
    return total / static_cast<double>(truth.gois.size());
}

std::vector<Region> goi_regions(const FinalGrid& grid) {
    std::vector<Region> out;
    for (const auto& cell : grid.cells())
        if (cell.kind == CellKind::goi) out.push_back(cell.geometry);
    return out;
}

StayStats stay_stats(std::span<const Stay> stays) {
    StayStats s;
    s.count = stays.size();
    for (const auto& stay : stays)
        if (stay.ps.size() == 1) ++s.single_point_count;
    return s;
}

DestinationStats destination_stats(std::span<const Destination> destinations) {
    DestinationStats s;
    s.count = destinations.size();
    for (const auto& d : destinations) ++s.frequency_histogram[d.frequency];
    return s;
}

} // namespace goigrid
