#pragma once

#include <bit>

#include "mcga/hash.hpp"
#include "mcga/operators.hpp"

namespace mcga {

// Permutation genotype with optional adaptive payload (decoder weights,
// crossover tag, mutation rate).
struct PermGenotype {
    ops::PermutationString order;
    ops::AdaptiveGenes aux;
    bool operator==(const PermGenotype&) const = default;
};

inline std::uint64_t perm_genotype_hash(const PermGenotype& g) {
    std::uint64_t h = fnv1a_ints(g.order);
    for (double w : g.aux.decoder_weights)
        h = hash_combine_u64(h, std::bit_cast<std::uint64_t>(w));
    h = hash_combine_u64(h, static_cast<std::uint64_t>(g.aux.crossover_tag));
    h = hash_combine_u64(h, std::bit_cast<std::uint64_t>(g.aux.mutation_rate));
    return h;
}

enum class PermCrossover { OrderBased, C1, PMX, PUX };

}  // namespace mcga
