#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "mcga/rng.hpp"

namespace mcga::ops {

// A value string holds one gene per slot, each gene drawn from that slot's
// own domain (shift-pattern indices, shop types, ...).
using ValueString = std::vector<int>;

// A permutation string holds each of 0..n-1 exactly once.
using PermutationString = std::vector<int>;

bool is_permutation_of_iota(const PermutationString& s);

// ---- value-string crossover ----

// k sorted distinct cut points, children alternate parent segments.
std::pair<ValueString, ValueString> kpoint_crossover(const ValueString& p1, const ValueString& p2,
                                                     int k, Rng& rng);

// Each gene comes from the first parent with probability p, otherwise
// uniformly from one of the remaining parents. 2 to 4 parents.
ValueString param_uniform_crossover(std::span<const ValueString* const> parents, double p,
                                    Rng& rng);

// One source string per segment; segments must partition [0, n) exactly.
struct SegmentPart {
    const ValueString* source = nullptr;
    std::size_t begin = 0;
    std::size_t end = 0;  // exclusive
};
ValueString fixed_point_crossover(std::span<const SegmentPart> parts);

// ---- permutation crossover ----

// Children keep their own [cut1, cut2) segment in place and fill the
// remaining slots left to right with the missing values in the other
// parent's order.
std::pair<PermutationString, PermutationString> order_based_crossover(const PermutationString& p1,
                                                                      const PermutationString& p2,
                                                                      std::size_t cut1,
                                                                      std::size_t cut2);

// Children keep the prefix [0, cut) of one parent and append the missing
// values in the other parent's order.
std::pair<PermutationString, PermutationString> c1_crossover(const PermutationString& p1,
                                                             const PermutationString& p2,
                                                             std::size_t cut);

// Partially mapped crossover: mapping sections [cut1, cut2) are exchanged
// and duplicates outside the section resolved through the positional mapping.
std::pair<PermutationString, PermutationString> pmx_crossover(const PermutationString& p1,
                                                              const PermutationString& p2,
                                                              std::size_t cut1, std::size_t cut2);

// Parameterised uniform order crossover over an explicit binary template:
// c1 keeps p1's genes where the template is one, c2 keeps p2's genes where it
// is zero; gaps fill with the missing values in the other parent's order.
std::pair<PermutationString, PermutationString> pux_crossover_with_template(
    const PermutationString& p1, const PermutationString& p2,
    std::span<const std::uint8_t> tmpl);

// Same with the template drawn per position as Bernoulli(p), 0.5 <= p <= 1.
std::pair<PermutationString, PermutationString> pux_crossover(const PermutationString& p1,
                                                              const PermutationString& p2,
                                                              double p, Rng& rng);

// ---- mutation ----

// Each gene independently redrawn uniformly from its slot's domain with the
// given rate. Domains are indexed by slot.
ValueString single_gene_mutation(const ValueString& s, double rate,
                                 std::span<const std::vector<int>> domains, Rng& rng);

// Each position selected at the given rate swaps with a uniformly chosen
// partner. With max_partner_exclusive > 0 one partner is always drawn below
// that bound (boundary mutation).
PermutationString swap_mutation(const PermutationString& s, double rate, Rng& rng,
                                std::size_t max_partner_exclusive = 0);

// With probability `rate` per string, two points are chosen and the enclosed
// segment uniformly reshuffled.
PermutationString scramble_mutation(const PermutationString& s, double rate, Rng& rng);

// ---- adaptive genes ----

enum class CrossoverTag { C1, PMX, PUX66 };

struct AdaptiveGenes {
    std::vector<double> decoder_weights;
    CrossoverTag crossover_tag = CrossoverTag::PUX66;
    double mutation_rate = 0.0;

    bool operator==(const AdaptiveGenes&) const = default;
};

// Initialisation/reset ranges for adaptive genes. Disabled parts keep their
// configured fixed value.
struct AdaptiveRanges {
    double weight_lo = 0.0;
    double weight_hi = 10000.0;
    std::size_t weight_count = 0;
    bool tag_enabled = false;
    bool rate_enabled = false;
    double rate_lo = 0.0;
    double rate_hi = 0.05;
};

enum class WeightInheritance { TakeRandomParent, RankWeightedAverage, UniformInRange };

struct RankedAdaptive {
    const AdaptiveGenes* genes = nullptr;
    double rank = 1.0;
};

AdaptiveGenes init_adaptive(const AdaptiveRanges& ranges, Rng& rng);

// Decoder weights follow the chosen strategy, the crossover tag comes from
// the higher-ranked parent and the mutation rate is the rank-weighted
// average of the parents'.
AdaptiveGenes inherit_adaptive(std::span<const RankedAdaptive> parents,
                               WeightInheritance strategy, Rng& rng);

}  // namespace mcga::ops
