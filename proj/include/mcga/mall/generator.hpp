#pragma once

#include <cstdint>
#include <vector>

#include "mcga/mall/types.hpp"

namespace mcga::mall {

// Instance generation per data-set id:
//   3: 100 locations, 5 areas, 50 types, 8 groups, loose sizes, loose counts
//   4: 100/5/20/5, loose sizes, average counts
//   5: 100/5/20/5, loose sizes, tight counts
//   6: 100/5/20/5, tight sizes, average counts
//   7: 100/5/20/5, tight sizes, tight counts
// Tight size caps are 6 small, 17 medium, 22 large; average counts put the
// summed minima at 60-80% of the locations, tight at 95-98%.
MallInstance generate_mall_instance(int set_id, std::uint64_t seed);

// One instance per set 4..7 sharing group memberships, ideal counts,
// attractiveness and fixed rents, so tighter sets' solutions stay feasible
// in looser ones.
std::vector<MallInstance> generate_linked_instances(std::uint64_t seed);

// 8 locations, 3 shop types, 2 areas; small enough to enumerate all 3^8
// layouts.
MallInstance generate_micro_mall_instance(std::uint64_t seed);

}  // namespace mcga::mall
