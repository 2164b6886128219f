#pragma once

#include <cstdint>
#include <string>

#include "mcga/nurse/types.hpp"

namespace mcga::nurse {

enum class CostVariant { Structured, RandomCost, HighPatternCost };

struct GenSpec {
    int nurse_count = 25;  // 20..30 sensible
    CostVariant variant = CostVariant::Structured;
    bool with_extensions = false;  // annotate head nurses and teams
    std::string name;
};

// Substitute for the unavailable hospital files: contracts, preferences,
// requests and history are randomised, demand is derived from a sampled
// reference roster and then knapsack-smoothed, so the covering constraints
// are tight and at least one feasible roster exists.
NurseInstance generate_nurse_instance(const GenSpec& spec, std::uint64_t seed);

// Tiny instances for exhaustive enumeration: 3-4 nurses with at most 8
// patterns each, tight demand, guaranteed feasible.
NurseInstance generate_micro_instance(std::uint64_t seed);

CostVariant cost_variant_from_name(const std::string& name);
std::string cost_variant_name(CostVariant v);

}  // namespace mcga::nurse
