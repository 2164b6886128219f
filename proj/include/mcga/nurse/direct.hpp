#pragma once

#include <array>
#include <cstdint>

#include "mcga/ga.hpp"
#include "mcga/nurse/domain.hpp"
#include "mcga/nurse/types.hpp"
#include "mcga/operators.hpp"
#include "mcga/rng.hpp"
#include "mcga/solve.hpp"

namespace mcga::nurse {

// ---- swap heuristics (applied to top individuals of the main population) ----

// Cyclic exchanges of shift patterns among nurses of the same grade and
// contract, up to cycles of four, kept when they strictly reduce the summed
// pattern costs. Cover is unchanged by construction.
Roster chain_swap(const Roster& roster, const NurseInstance& instance, int max_cycle = 4);

// Forces a day/night exchange between a nurse who works k days or k nights
// and one who works k days or k-1 nights when their current sides leave the
// week one shift short. The first moves onto nights (covering the other's
// nights plus the most uncovered extra night), the second onto a random day
// pattern.
Roster special_swap(const Roster& roster, const NurseInstance& instance, Rng& rng);

// Moves nurses from surplus shifts onto degree-1 adjacent patterns that fix a
// shortage without creating one. Never increases total violation.
Roster adjacent_swap(const Roster& roster, const NurseInstance& instance);

// Lamarckian repair: one pass nurse by nurse, pattern by pattern, accepting
// any strict fitness improvement immediately.
Roster hill_climb_repair(const Roster& roster, const NurseInstance& instance, double w);

// New population around a previous best: each gene copies it with
// probability 1 - p_dc, otherwise draws from the patterns within the given
// adjacency degree (falling back to the whole feasible set when empty).
std::vector<Roster> delta_restart(const Roster& best, int level, double p_dc,
                                  const NurseInstance& instance, std::size_t population,
                                  Rng& rng);

// ---- migration ----

enum class MigrationMode { None, RandomPerIndividual, BestKEvery };

// ---- solver configuration ----

enum class NurseAlgo { Direct, Coevo, CoevoRepair, Delta };

struct DirectNurseOptions {
    NurseAlgo algo = NurseAlgo::Direct;
    double uniform_p = 0.8;  // first-parent bias of the value-string crossover
    MigrationMode migration = MigrationMode::RandomPerIndividual;
    double migration_p = 0.05;
    int migration_k = 5;
    int migration_every = 5;
    IncentiveConfig incentives;
    int swap_top = 10;  // swaps act on this many of the main population's best
    double delta_p_dc = 0.10;
    double w_head = 5.0;
    double w_team = 5.0;
    ga::GaConfig ga{.population_size = 1000,
                    .parents_per_crossover = 4,
                    .penalty_strategy = penalty::Strategy::FeasibleGap,
                    .penalty_params = {.nu = 5.0, .fixed_w = 20.0},
                    // before any feasible solution exists the gap is taken
                    // from the censored cost, so the weight starts high
                    .assumed_feasible_cap = 100.0};
};

SolveOutcome solve_nurse_direct(const NurseInstance& instance, const DirectNurseOptions& options,
                                std::uint64_t seed);

NurseAlgo nurse_algo_from_name(const std::string& name);

}  // namespace mcga::nurse
