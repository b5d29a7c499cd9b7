#pragma once

#include "goigrid/destinations.hpp"
#include "goigrid/partition.hpp"
#include "goigrid/stays.hpp"
#include "goigrid/svl.hpp"

#include <iosfwd>
#include <map>
#include <string>

namespace goigrid {

using KeyValues = std::map<std::string, std::string>;

/// Flat `key = value` text. Blank lines and `#` comments are skipped, dashes in
/// keys read as underscores, and a repeated key is an error.
KeyValues read_key_values(std::istream& in);
KeyValues read_key_values_file(const std::string& path);
void write_key_values(std::ostream& out, const KeyValues& kv);

struct PipelineConfig {
    StayParams stay;
    MergeParams merge;
    double cell_size = 5.0;
    Metric metric = Metric::gs;
    StayMethod stay_method = StayMethod::twc;
    DestinationMethod destination_method = DestinationMethod::geometric;
    LabelStrategy strategy = LabelStrategy::intersection;
    bool collapse = false;

    void validate() const;
    /// Every field under its config key, values in output formatting.
    KeyValues to_key_values() const;
};

/// Applies overrides; unknown keys and malformed values are rejected.
PipelineConfig apply_config(PipelineConfig config, const KeyValues& kv);

} // namespace goigrid
