#pragma once

#include <optional>
#include <span>

#include "mcga/ga.hpp"
#include "mcga/nurse/types.hpp"
#include "mcga/operators.hpp"
#include "mcga/perm.hpp"
#include "mcga/rng.hpp"
#include "mcga/solve.hpp"

namespace mcga::nurse {

// ---- decoders ----

enum class DecoderKind { CoverHighest, OverallContribution, Combined };

// Cover weights per grade plus the preference weight. In adaptive mode the
// grade weights live on the individual and w_p is fixed at 1.
struct DecoderWeights {
    double w1 = 8.0;
    double w2 = 2.0;
    double w3 = 1.0;
    double w_p = 0.5;
    double grade_weight(int grade) const { return grade == 1 ? w1 : grade == 2 ? w2 : w3; }
};

enum class SearchOrderKind { LowDay, RandOrder, Biased, Cheapest, RandCost };

// Per-nurse fixed search orders over the feasible set, materialised once per
// run and then used for every decode of that run. Entries are positions into
// feasible[i].
struct SearchOrders {
    std::vector<std::vector<int>> order;
};

std::vector<int> make_search_order(SearchOrderKind kind, const NurseInstance& instance,
                                   std::size_t nurse, Rng& rng);
SearchOrders make_search_orders(SearchOrderKind kind, const NurseInstance& instance, Rng& rng);

// Simple bound: with a best feasible objective known, no pattern costing
// more than it can be in an optimal solution. Returns the kept candidates
// (positions), or all of them when the bound is absent or would drop
// everything.
std::vector<int> apply_simple_bound(std::span<const int> candidates, std::span<const int> p_row,
                                    std::optional<double> best_feasible_objective);

// First 1-indexed position whose cumulative cost exceeds the bound, clamped
// to n; n when the bound is absent. Boundary crossover cuts and boundary
// mutation partners stay before this point.
std::size_t boundary_point(std::span<const double> cumulative,
                           std::optional<double> bound);

// Greedy schedule builders. All are deterministic given (perm, weights,
// orders, bound).
Roster decode_cover_highest(const ops::PermutationString& perm, const NurseInstance& instance,
                            std::optional<double> bound = std::nullopt);
Roster decode_overall_contribution(const ops::PermutationString& perm,
                                   const NurseInstance& instance, const DecoderWeights& weights,
                                   const SearchOrders& orders,
                                   std::optional<double> bound = std::nullopt);
Roster decode_combined(const ops::PermutationString& perm, const NurseInstance& instance,
                       const DecoderWeights& weights, const SearchOrders& orders,
                       std::optional<double> bound = std::nullopt);

Roster decode(DecoderKind kind, const ops::PermutationString& perm, const NurseInstance& instance,
              const DecoderWeights& weights, const SearchOrders& orders,
              std::optional<double> bound);

// ---- the permutation GA ----

using mcga::PermCrossover;
using mcga::PermGenotype;

struct IndirectNurseOptions {
    DecoderKind decoder = DecoderKind::Combined;
    SearchOrderKind order = SearchOrderKind::Biased;
    DecoderWeights weights;
    PermCrossover crossover = PermCrossover::PUX;
    double pux_p = 0.66;
    bool simple_bound = true;
    bool adaptive = false;  // self-adjusting grade weights + crossover tag
    ops::WeightInheritance weight_inheritance = ops::WeightInheritance::RankWeightedAverage;
    bool scramble = false;  // scramble instead of swap mutation
    bool boundary_crossover = false;
    bool boundary_mutation = false;
    double w_head = 5.0;
    double w_team = 5.0;
    ga::GaConfig ga{.population_size = 100,
                    .parents_per_crossover = 2,
                    .penalty_params = {.fixed_w = 20.0},
                    .assumed_feasible_cap = std::nullopt};
};

SolveOutcome solve_nurse_indirect(const NurseInstance& instance,
                                  const IndirectNurseOptions& options, std::uint64_t seed);

}  // namespace mcga::nurse
