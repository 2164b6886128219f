#pragma once

#include <string>

#include "mcga/ga.hpp"
#include "mcga/mall/types.hpp"
#include "mcga/perm.hpp"
#include "mcga/rng.hpp"
#include "mcga/solve.hpp"

namespace mcga::mall {

// Decoder weights of the six scoring terms; the fixed area/type rent always
// enters with weight one.
struct MallDecoderWeights {
    double w_medium = 500.0;
    double w_large = 1000.0;
    double w_size = 250.0;
    double w_ideal = 500.0;
    double w_member = 200.0;
    double w_group = 2000.0;
};

enum class MallWeightPreset { Low, Medium, High, Auto };
MallDecoderWeights weight_preset(MallWeightPreset preset);
MallWeightPreset weight_preset_from_name(const std::string& name);

// Greedy decoder: locations in permutation order; every type still below its
// maximum is scored on the shop size it would create, the remaining size-cap
// slack, the distance to its ideal count, group membership and completion,
// plus the fixed rent. Highest score wins, first on ties.
Layout decode_mall(const ops::PermutationString& perm, const MallInstance& instance,
                   const MallDecoderWeights& weights);

// Picks from rank-drawn candidates of one sub-population the mate whose area
// segment, spliced into the first parent, lands the shop counts closest to
// their ideals.
std::size_t mate_select(const Layout& first_parent, std::span<const Layout> candidates,
                        int candidate_area, const MallInstance& instance);

// While some type is below its minimum, converts one location of a donor
// type that sits strictly above its own minimum, preferring an area that
// already holds the deficient type.
Layout shop_count_repair(const Layout& layout, const MallInstance& instance, Rng& rng);

enum class MallAlgo { Direct, Coevo, CoevoMate, CoevoRepair, Indirect };
MallAlgo mall_algo_from_name(const std::string& name);

struct MallOptions {
    MallAlgo algo = MallAlgo::Direct;
    double uniform_p = 0.66;  // direct / within-population crossover bias
    // indirect
    MallWeightPreset weights = MallWeightPreset::Auto;
    PermCrossover crossover = PermCrossover::PUX;
    double pux_p = 0.66;
    bool adaptive_crossover = false;
    bool adaptive_mutation = false;
    ops::WeightInheritance weight_inheritance = ops::WeightInheritance::RankWeightedAverage;
    // co-evolution
    int mate_candidates = 10;
    double repair_probability = 0.5;
    ga::GaConfig ga{.population_size = 200,
                    .parents_per_crossover = 4,
                    .penalty_params = {.fixed_w = 30.0},
                    .assumed_feasible_cap = std::nullopt};
};

SolveOutcome solve_mall(const MallInstance& instance, const MallOptions& options,
                        std::uint64_t seed);

}  // namespace mcga::mall
