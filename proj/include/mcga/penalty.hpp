#pragma once

#include <optional>
#include <string>

namespace mcga::penalty {

// Penalty weight strategies. Beyond the fixed weight there are four adaptive
// ones, all updated once per generation from the run's best solutions:
//  - FeasibleGap scales with the gap between the best feasible and the best
//    overall solution, halved (severity 1).
//  - ViolationScaled grows with the violation of the best solution so far.
//  - ViolationComplement shrinks with it (alpha * (10 - violation)).
//  - TwoPhase holds one high value until a feasible solution appears, then a
//    low one.
enum class Strategy { Fixed, FeasibleGap, ViolationScaled, ViolationComplement, TwoPhase };

struct Params {
    double alpha = 8.0;        // severity of the violation-based strategies
    double nu = 5.0;           // floor weight for FeasibleGap; the others use alpha / 2
    double high = 50.0;        // TwoPhase weight while no feasible solution exists
    double low = 5.0;          // TwoPhase weight afterwards
    double fixed_w = 20.0;     // Fixed strategy weight
    double severity_k = 1.0;   // exponent on the violation count in FeasibleGap
};

struct State {
    Strategy strategy = Strategy::Fixed;
    Params params;
    double w = 20.0;

    // Fed from the current generation's bests before each update.
    std::optional<double> best_feasible_objective;  // V_feas
    double best_overall_fitness = 0.0;              // V_all
    double best_violation = 0.0;                    // violation units of the best solution

    bool ever_feasible() const { return best_feasible_objective.has_value(); }
};

// Recomputes state.w from the tracked bests and returns it. The weight never
// reaches zero: every strategy falls back to its floor value.
double update_weight(State& state);

Strategy strategy_from_name(const std::string& name);
std::string strategy_name(Strategy s);

}  // namespace mcga::penalty
