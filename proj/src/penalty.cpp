#include "mcga/penalty.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace mcga::penalty {

double update_weight(State& state) {
    const Params& prm = state.params;
    switch (state.strategy) {
        case Strategy::Fixed:
            state.w = prm.fixed_w;
            break;
        case Strategy::FeasibleGap: {
            if (state.best_feasible_objective.has_value() &&
                *state.best_feasible_objective > state.best_overall_fitness) {
                double gap = *state.best_feasible_objective - state.best_overall_fitness;
                state.w = std::pow(0.5, prm.severity_k) * gap;
                if (state.w <= 0.0) state.w = prm.nu;
            } else {
                state.w = prm.nu;
            }
            break;
        }
        case Strategy::ViolationScaled: {
            double q = state.best_violation;
            state.w = q > 0.0 ? prm.alpha * q : prm.alpha / 2.0;
            break;
        }
        case Strategy::ViolationComplement: {
            double q = std::max(10.0 - state.best_violation, 0.0);
            state.w = q > 0.0 ? prm.alpha * q : prm.alpha / 2.0;
            break;
        }
        case Strategy::TwoPhase:
            state.w = state.ever_feasible() ? prm.low : prm.high;
            break;
    }
    return state.w;
}

Strategy strategy_from_name(const std::string& name) {
    if (name == "fixed") return Strategy::Fixed;
    if (name == "feasible_gap") return Strategy::FeasibleGap;
    if (name == "violation") return Strategy::ViolationScaled;
    if (name == "violation_complement") return Strategy::ViolationComplement;
    if (name == "two_phase") return Strategy::TwoPhase;
    throw std::invalid_argument("unknown penalty strategy: " + name);
}

std::string strategy_name(Strategy s) {
    switch (s) {
        case Strategy::Fixed: return "fixed";
        case Strategy::FeasibleGap: return "feasible_gap";
        case Strategy::ViolationScaled: return "violation";
        case Strategy::ViolationComplement: return "violation_complement";
        case Strategy::TwoPhase: return "two_phase";
    }
    return "fixed";
}

}  // namespace mcga::penalty
