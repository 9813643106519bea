#pragma once

// Search checkpoints: a JSON file holding the effective config, the unit
// cursor (units [0, units_done) are merged) and everything merged so far.
// Written to <path>.tmp and renamed over <path>.

#include <string>

#include "knlab/search.hpp"

namespace knlab {

void save_checkpoint(const std::string& path, const SearchReport& report);

// No-op if `path` does not exist. Otherwise restores the merged prefix into
// `report`, whose config and units_total must already be set; throws
// SearchConfigError if the file belongs to a different run.
void resume_from_checkpoint(const std::string& path, SearchReport& report);

}  // namespace knlab
