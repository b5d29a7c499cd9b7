#pragma once

#include "goigrid/destinations.hpp"
#include "goigrid/evaluation.hpp"
#include "goigrid/partition.hpp"
#include "goigrid/stays.hpp"
#include "goigrid/svl.hpp"

#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace goigrid {

inline constexpr std::string_view kToolName = "goigrid";
inline constexpr std::string_view kToolVersion = "1.0.0";

/// Lower-case hex SHA-256 of `bytes`.
std::string sha256_hex(std::string_view bytes);
std::string read_file(const std::string& path);
void write_file(const std::string& path, std::string_view bytes);

/// Collection-level members shared by every GeoJSON artifact. Coordinates are
/// planar meters around `origin`.
struct ArtifactHeader {
    std::string kind;               ///< stays, destinations, grid, truth
    LatLon origin;
    std::string trajectory_digest;  ///< empty for ground truth
};

// All writers format numbers at nine significant digits, so writing what a
// loader returned reproduces the file byte for byte.

struct StaysArtifact {
    ArtifactHeader header;
    StayMethod method = StayMethod::twc;
    std::vector<Stay> stays;
};

std::string stays_to_geojson(const StaysArtifact& a);
StaysArtifact stays_from_geojson(std::string_view text);
/// `id,at,dt,point_count,centroid_x,centroid_y`
std::string stays_to_csv(std::span<const Stay> stays);

struct DestinationsArtifact {
    ArtifactHeader header;
    DestinationMethod method = DestinationMethod::geometric;
    MergeParams params;
    std::vector<Destination> destinations;
};

std::string destinations_to_geojson(const DestinationsArtifact& a);
DestinationsArtifact destinations_from_geojson(std::string_view text);

struct GridArtifact {
    ArtifactHeader header;
    double cell_size = 0.0;
    Metric metric = Metric::gs;
    FinalGrid grid;
};

std::string grid_to_geojson(const GridArtifact& a);
GridArtifact grid_from_geojson(std::string_view text);

struct TruthArtifact {
    ArtifactHeader header;
    GroundTruth truth;
};

std::string truth_to_geojson(const TruthArtifact& a);
TruthArtifact truth_from_geojson(std::string_view text);

/// `t,label,kind`
std::string svl_to_csv(std::span<const SvlEntry> entries);
std::vector<SvlEntry> svl_from_csv(std::string_view text);
std::string svl_to_jsonl(std::span<const SvlEntry> entries);

/// Trajectory as `t,lat,lon` text, unprojected around its origin.
std::string trajectory_to_csv(const Trajectory& traj);

} // namespace goigrid
