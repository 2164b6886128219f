#pragma once

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "mcga/penalty.hpp"
#include "mcga/rng.hpp"

namespace mcga::ga {

// One seeded PRNG per run; a run is strictly single-threaded and
// deterministic given (problem, config, seed).

struct GaConfig {
    int population_size = 1000;
    double elite_fraction = 0.10;
    int stop_stagnation = 30;
    double mutation_rate = 0.015;  // per gene
    int parents_per_crossover = 2;
    bool dedupe_elites = true;
    int max_generations = 5000;  // safety cap, stagnation is the real criterion
    penalty::Strategy penalty_strategy = penalty::Strategy::Fixed;
    penalty::Params penalty_params;
    // Optional a-priori cap on the best feasible objective (the censored
    // cost); keeps gap-scaled weights high before a feasible solution shows.
    std::optional<double> assumed_feasible_cap;
    bool record_convergence = false;
};

template <typename G, typename E>
struct Individual {
    G genotype;
    E eval;
};

template <typename G>
struct ParentView {
    const G* genotype = nullptr;
    double rank = 1.0;  // population_size for the best member
};

// Counters for the always-on structural checks: population size constant,
// best fitness (compared under a common weight) never worsening.
struct InvariantStats {
    int size_violations = 0;
    int monotonicity_violations = 0;
    int total() const { return size_violations + monotonicity_violations; }
};

template <typename G, typename E>
struct RunResult {
    std::optional<G> best_feasible_genotype;
    std::optional<E> best_feasible_eval;
    std::optional<double> best_feasible_objective;  // natural units
    G best_overall_genotype{};
    double best_overall_fitness = 0.0;  // minimized fitness key at evaluation time
    int generations = 0;
    double wall_seconds = 0.0;
    std::uint64_t initial_population_hash = 0;
    std::uint64_t final_population_hash = 0;
    double final_weight = 0.0;
    InvariantStats invariants;
    std::vector<std::pair<double, double>> convergence;  // per-generation (best, mean) key
};

// Draws `count` members by rank: the best of n has rank n and is chosen with
// probability n / (n(n+1)/2). Returns sorted positions, 0 = best.
inline std::vector<std::size_t> rank_select(std::size_t population_size, std::size_t count,
                                            Rng& rng) {
    if (population_size == 0) throw std::invalid_argument("empty population");
    const std::uint64_t n = population_size;
    const std::uint64_t total = n * (n + 1) / 2;
    std::vector<std::size_t> picks(count);
    for (std::size_t c = 0; c < count; ++c) {
        std::uint64_t u = static_cast<std::uint64_t>(
            rng.uniform_int(0, static_cast<std::int64_t>(total) - 1));
        // cumulative width of sorted positions [0, p] is (p+1)n - p(p+1)/2
        std::size_t lo = 0, hi = population_size - 1;
        while (lo < hi) {
            std::size_t mid = (lo + hi) / 2;
            std::uint64_t cum = (mid + 1) * n - mid * (mid + 1) / 2;
            if (u < cum)
                hi = mid;
            else
                lo = mid + 1;
        }
        picks[c] = lo;
    }
    return picks;
}

// Elitist replacement: the best ceil(elite_fraction * capacity) of the old
// population survive (identical genotypes collapsed when dedupe is on), the
// remainder is filled from the children in generation order.
template <typename Ind>
std::vector<Ind> replace_population(const std::vector<Ind>& old_sorted, std::vector<Ind>&& children,
                                    std::size_t capacity, double elite_fraction, bool dedupe) {
    const std::size_t elite_target = static_cast<std::size_t>(
        std::ceil(elite_fraction * static_cast<double>(capacity)));
    if (children.size() + elite_target < capacity) {
        throw std::invalid_argument(
            "insufficient children: short by " +
            std::to_string(capacity - elite_target - children.size()));
    }

    std::vector<Ind> next;
    next.reserve(capacity);
    for (const Ind& ind : old_sorted) {
        if (next.size() >= elite_target) break;
        if (dedupe) {
            bool duplicate = false;
            for (const Ind& kept : next)
                if (kept.genotype == ind.genotype) {
                    duplicate = true;
                    break;
                }
            if (duplicate) continue;
        }
        next.push_back(ind);
    }
    for (Ind& child : children) {
        if (next.size() >= capacity) break;
        next.push_back(std::move(child));
    }
    if (next.size() != capacity)
        throw std::invalid_argument("insufficient children: short by " +
                                    std::to_string(capacity - next.size()));
    return next;
}

// True iff the trailing `stagnation` entries contain no strict improvement of
// the running best. The first entry of a history always counts as an
// improvement, so short histories never stop.
inline bool should_stop(std::span<const double> history, int stagnation) {
    if (history.empty()) throw std::invalid_argument("empty history");
    if (stagnation <= 0) throw std::invalid_argument("stagnation must be positive");
    const std::size_t len = history.size();
    const std::size_t window_begin =
        len > static_cast<std::size_t>(stagnation) ? len - static_cast<std::size_t>(stagnation)
                                                   : 0;
    double running_best = history[0];
    for (std::size_t t = 0; t < len; ++t) {
        bool improved = (t == 0) || history[t] < running_best;
        if (t > 0) running_best = std::min(running_best, history[t]);
        if (improved && t >= window_begin) return false;
    }
    return true;
}

// Generational GA over an arbitrary problem binding. The binding supplies the
// genotype, its evaluation (weight independent), the fitness key (minimized,
// computed under the live penalty weight), operators and hashes:
//
//   struct Problem {
//     using Genotype = ...;   // equality-comparable
//     using Eval = ...;
//     Genotype sample(Rng&) const;
//     Eval evaluate(const Genotype&) const;
//     double fitness_key(const Eval&, double w) const;  // lower is better
//     bool is_feasible(const Eval&) const;
//     double natural_objective(const Eval&) const;
//     bool natural_improves(double candidate, double incumbent) const;
//     double violation_units(const Eval&) const;
//     std::vector<Genotype> crossover(std::span<const ParentView<Genotype>>, Rng&) const;
//     void mutate(Genotype&, double rate, Rng&) const;
//     std::uint64_t genotype_hash(const Genotype&) const;
//   };
template <typename P>
RunResult<typename P::Genotype, typename P::Eval> run(const P& problem, const GaConfig& cfg,
                                                      std::uint64_t seed) {
    using G = typename P::Genotype;
    using E = typename P::Eval;
    using Ind = Individual<G, E>;

    if (cfg.population_size <= 0) throw std::invalid_argument("population size must be positive");
    const auto start = std::chrono::steady_clock::now();
    const std::size_t capacity = static_cast<std::size_t>(cfg.population_size);

    Rng rng(seed);
    RunResult<G, E> result;

    penalty::State pstate;
    pstate.strategy = cfg.penalty_strategy;
    pstate.params = cfg.penalty_params;
    pstate.w = cfg.penalty_params.fixed_w;
    if (cfg.assumed_feasible_cap) pstate.best_feasible_objective = *cfg.assumed_feasible_cap;

    bool have_best = false;
    double best_key_so_far = 0.0;

    auto note_evaluation = [&](const Ind& ind, double w) {
        double key = problem.fitness_key(ind.eval, w);
        if (!have_best || key < best_key_so_far) {
            have_best = true;
            best_key_so_far = key;
            result.best_overall_genotype = ind.genotype;
            result.best_overall_fitness = key;
            pstate.best_overall_fitness = key;
            pstate.best_violation = problem.violation_units(ind.eval);
        }
        if (problem.is_feasible(ind.eval)) {
            double objective = problem.natural_objective(ind.eval);
            if (!result.best_feasible_objective ||
                problem.natural_improves(objective, *result.best_feasible_objective)) {
                result.best_feasible_genotype = ind.genotype;
                result.best_feasible_eval = ind.eval;
                result.best_feasible_objective = objective;
            }
            if (!pstate.best_feasible_objective || key < *pstate.best_feasible_objective)
                pstate.best_feasible_objective = key;
        }
    };

    // Initial population, sampled before anything else so that runs sharing a
    // seed share their starting point regardless of later configuration.
    std::vector<Ind> pop;
    pop.reserve(capacity);
    for (std::size_t i = 0; i < capacity; ++i) {
        G g = problem.sample(rng);
        E e = problem.evaluate(g);
        pop.push_back(Ind{std::move(g), std::move(e)});
    }
    for (const Ind& ind : pop) note_evaluation(ind, pstate.w);
    {
        std::uint64_t h = 0xcbf29ce484222325ULL;
        for (const Ind& ind : pop) h = hash_combine_u64(h, problem.genotype_hash(ind.genotype));
        result.initial_population_hash = h;
    }
    penalty::update_weight(pstate);

    std::vector<double> history{best_key_so_far};

    auto sort_by_key = [&](std::vector<Ind>& members, double w) {
        std::stable_sort(members.begin(), members.end(), [&](const Ind& a, const Ind& b) {
            return problem.fitness_key(a.eval, w) < problem.fitness_key(b.eval, w);
        });
    };
    auto min_key = [&](const std::vector<Ind>& members, double w) {
        double best = problem.fitness_key(members.front().eval, w);
        for (const Ind& ind : members) best = std::min(best, problem.fitness_key(ind.eval, w));
        return best;
    };
    auto record_convergence = [&](const std::vector<Ind>& members, double w) {
        if (!cfg.record_convergence) return;
        double sum = 0.0;
        for (const Ind& ind : members) sum += problem.fitness_key(ind.eval, w);
        result.convergence.emplace_back(min_key(members, w),
                                        sum / static_cast<double>(members.size()));
    };

    record_convergence(pop, pstate.w);

    while (!should_stop(history, cfg.stop_stagnation) &&
           result.generations < cfg.max_generations) {
        const double w = pstate.w;
        sort_by_key(pop, w);

        std::size_t elite_target = static_cast<std::size_t>(
            std::ceil(cfg.elite_fraction * static_cast<double>(capacity)));
        std::size_t distinct_elites = 0;
        for (std::size_t i = 0; i < pop.size() && distinct_elites < elite_target; ++i) {
            if (cfg.dedupe_elites) {
                bool dup = false;
                for (std::size_t j = 0; j < i && !dup; ++j)
                    dup = pop[j].genotype == pop[i].genotype;
                if (dup) continue;
            }
            ++distinct_elites;
        }
        const std::size_t children_needed = capacity - distinct_elites;

        std::vector<Ind> children;
        children.reserve(children_needed);
        std::vector<ParentView<G>> parents(static_cast<std::size_t>(cfg.parents_per_crossover));
        while (children.size() < children_needed) {
            auto picks = rank_select(capacity, parents.size(), rng);
            for (std::size_t i = 0; i < parents.size(); ++i) {
                parents[i].genotype = &pop[picks[i]].genotype;
                parents[i].rank = static_cast<double>(capacity - picks[i]);
            }
            for (G& child : problem.crossover(parents, rng)) {
                if (children.size() >= children_needed) break;
                problem.mutate(child, cfg.mutation_rate, rng);
                E eval = problem.evaluate(child);
                Ind ind{std::move(child), std::move(eval)};
                note_evaluation(ind, w);
                children.push_back(std::move(ind));
            }
        }

        std::vector<Ind> next = replace_population(pop, std::move(children), capacity,
                                                   cfg.elite_fraction, cfg.dedupe_elites);

        if (next.size() != capacity) ++result.invariants.size_violations;

        // elitist monotonicity under the weight the elites were ranked with
        if (min_key(next, w) > min_key(pop, w) + 1e-9)
            ++result.invariants.monotonicity_violations;

        penalty::update_weight(pstate);

        pop = std::move(next);
        ++result.generations;
        history.push_back(best_key_so_far);
        record_convergence(pop, pstate.w);
    }

    std::uint64_t h = 0xcbf29ce484222325ULL;
    sort_by_key(pop, pstate.w);
    for (const Ind& ind : pop) h = hash_combine_u64(h, problem.genotype_hash(ind.genotype));
    result.final_population_hash = h;
    result.final_weight = pstate.w;
    result.wall_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return result;
}

}  // namespace mcga::ga
