#pragma once

#include <string>

#include "mcga/nurse/types.hpp"

namespace mcga::nurse {

// Instance files are JSON: `nurses` (contracts, preferences, requests,
// history, head/team flags), cumulative `demand` (14x3) and a `pij` section
// parallel to each nurse's feasible set. Patterns are regenerated from the
// contracts on load; an absent `pij` falls back to the cost builder.
std::string to_json(const NurseInstance& instance);
NurseInstance nurse_instance_from_json(const std::string& text);

NurseInstance load_nurse_instance(const std::string& path);
void save_nurse_instance(const NurseInstance& instance, const std::string& path);

}  // namespace mcga::nurse
