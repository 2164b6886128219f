#pragma once

#include <cstdint>
#include <utility>
#include <vector>

namespace mcga {

// Common result of one solver run, problem independent. `best_objective` is
// in natural units: request cost for rosters (lower better), rent for mall
// layouts (higher better).
struct SolveOutcome {
    bool found_feasible = false;
    double best_objective = 0.0;
    double best_fitness = 0.0;  // minimized fitness key of the best solution
    std::vector<int> best_solution;  // roster / layout of the best feasible (or overall)
    int generations = 0;
    double seconds = 0.0;
    int invariant_violations = 0;
    std::uint64_t initial_population_hash = 0;
    std::vector<std::pair<double, double>> convergence;  // (best, mean) per generation
};

}  // namespace mcga
