#pragma once

#include <span>
#include <utility>
#include <vector>

#include "mcga/nurse/types.hpp"

namespace mcga::nurse {

// ---- patterns ----

// All C(7, D) day patterns followed by all C(7, N) night patterns; nurses on
// a fixed day/night split get every combination of their two sides instead.
// Combinations are enumerated in lexicographic position order, so pattern
// lists are deterministic.
std::vector<ShiftPattern> enumerate_patterns(int day_shifts, int night_shifts,
                                             std::optional<std::pair<int, int>> combined);

// Basic pattern cost from the structure of the worked days: fewer blocks of
// consecutive shifts are nicer. Night-day-night combined patterns cost 18.
int pattern_base_cost(const ShiftPattern& p);

// Working shifts that must move to turn `a` into `b`. Patterns of the same
// kind must agree on shift counts; a day pattern against a night pattern
// rates as the day pattern's working shifts.
int adjacency_degree(const ShiftPattern& a, const ShiftPattern& b);

// Builds the global pattern table and per-nurse feasible sets. Day-only
// nurses get no night patterns and vice versa.
void build_pattern_table(NurseInstance& instance);

// ---- costs ----

// The p_ij row of one nurse over her feasible set, built from base costs,
// day/night class, violated requests, work stretch, continuity, night and
// weekend rotation; shifted by -1, clamped to 100 above 89 and topped up by
// last week's pattern cost. Always in [0, 100]. Dummies and banks cost 0.
// `deduct_one` applies the final shift that zeroes perfect patterns; the
// high-pattern-cost data variant scales bases to {0, 20, 40, 60} and skips it.
std::vector<int> build_pij(const NurseSpec& nurse, const NurseInstance& instance,
                           std::span<const int> feasible, bool deduct_one = true);

// Rebuilds every cost row of the instance from the rules above.
void build_all_costs(NurseInstance& instance, bool deduct_one = true);

// ---- knapsack smoothing ----

struct SmoothResult {
    Demand demand{};                      // adjusted demand
    std::vector<NurseSpec> added_nurses;  // dummy / bank nurses to append
    int day_overcover = 0;                // the `u` the ladder acted on
};

// Spreads day over-cover onto weekdays first and inserts dummy or bank
// nurses so the day covering constraints end up tight. Night demand must be
// coverable; the night assignment itself maximises the day shifts available.
SmoothResult knapsack_smooth(const Demand& demand, std::span<const NurseSpec> nurses);

// The demand-adjustment ladder on a known day over-cover u; exposed for the
// generator which fixes the day/night designation itself.
SmoothResult smooth_ladder(const Demand& demand, int day_overcover);

// Appends the added nurses to the instance (enumerating their patterns and
// zero costs) and replaces the demand.
void apply_smoothing(NurseInstance& instance, const SmoothResult& result);

// ---- evaluation ----

CoverState compute_cover(const Roster& roster, const NurseInstance& instance);

// objective + w * undercover; only undercovering is penalised.
NurseEval evaluate(const Roster& roster, const NurseInstance& instance);

inline double fitness_of(const NurseEval& e, double w) {
    return e.objective + w * e.violation + e.extra_penalty;
}

// Pseudo demand: the per-grade split of the cumulative demand, clamped at 0.
std::array<std::array<int, kGradeCount>, kShiftCount> pseudo_demand(const Demand& demand);

// Sub-population fitness over a grade subset: costs of those nurses plus
// w * shortfall of the per-grade pseudo constraints, counting exact-grade
// cover only.
double sub_fitness(const Roster& roster, std::span<const int> grade_set,
                   const NurseInstance& instance, double w);

// Head-nurse and team constraint extension penalties.
double extended_penalty(const Roster& roster, const NurseInstance& instance, double w_head,
                        double w_team);

// Aggregate-cover classification of infeasible rosters. Feasible requires
// zero violation at every grade; balance looks at total cover per shift.
BalanceClass classify_balance(const Roster& roster, const NurseInstance& instance);
BalanceClass classify_balance(const CoverState& cover, bool fully_feasible);

// Fitness adjustment for the balance classes: a bonus of incentive * w for
// balanced solutions and a malus of disincentive * w for unbalanced ones.
struct IncentiveConfig {
    double incentive = 3.0;
    double disincentive = 3.0;
    int repair_top_k = 5;
};
double apply_incentives(double fitness, BalanceClass cls, double w, const IncentiveConfig& cfg);

// ---- validation ----

// Throws std::invalid_argument with a diagnostic if any instance invariant
// fails (grades, request grades, cost range, demand monotonicity, ...).
void validate_instance(const NurseInstance& instance);

}  // namespace mcga::nurse
