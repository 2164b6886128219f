#include <algorithm>
#include <stdexcept>

#include "mcga/nurse/domain.hpp"

namespace mcga::nurse {

CoverState compute_cover(const Roster& roster, const NurseInstance& instance) {
    CoverState cover;
    std::array<std::array<int, kGradeCount>, kShiftCount> exact{};
    for (std::size_t i = 0; i < roster.size(); ++i) {
        const ShiftPattern& p = instance.patterns[static_cast<std::size_t>(roster[i])];
        int g = instance.nurses[i].grade - 1;
        for (int k = 0; k < kShiftCount; ++k)
            if (p.works(k)) ++exact[static_cast<std::size_t>(k)][static_cast<std::size_t>(g)];
    }
    for (int k = 0; k < kShiftCount; ++k) {
        int cum = 0;
        for (int s = 0; s < kGradeCount; ++s) {
            cum += exact[static_cast<std::size_t>(k)][static_cast<std::size_t>(s)];
            cover.provided[static_cast<std::size_t>(k)][static_cast<std::size_t>(s)] = cum;
            cover.shortfall[static_cast<std::size_t>(k)][static_cast<std::size_t>(s)] = std::max(
                instance.demand[static_cast<std::size_t>(k)][static_cast<std::size_t>(s)] - cum, 0);
        }
        cover.surplus[static_cast<std::size_t>(k)] =
            cum - instance.demand[static_cast<std::size_t>(k)][kGradeCount - 1];
    }
    return cover;
}

NurseEval evaluate(const Roster& roster, const NurseInstance& instance) {
    if (roster.size() != instance.nurse_count())
        throw std::invalid_argument("roster length does not match nurse count");
    NurseEval eval;
    for (std::size_t i = 0; i < roster.size(); ++i) {
        if (!instance.in_feasible_set(i, roster[i]))
            throw std::invalid_argument("assignment outside the nurse's feasible set");
        eval.objective += instance.cost_of(i, roster[i]);
    }
    CoverState cover = compute_cover(roster, instance);
    eval.violation = cover.total_shortfall();
    eval.feasible = eval.violation == 0;
    return eval;
}

std::array<std::array<int, kGradeCount>, kShiftCount> pseudo_demand(const Demand& demand) {
    std::array<std::array<int, kGradeCount>, kShiftCount> s{};
    for (int k = 0; k < kShiftCount; ++k) {
        s[static_cast<std::size_t>(k)][0] = demand[static_cast<std::size_t>(k)][0];
        for (int g = 1; g < kGradeCount; ++g)
            s[static_cast<std::size_t>(k)][static_cast<std::size_t>(g)] =
                std::max(demand[static_cast<std::size_t>(k)][static_cast<std::size_t>(g)] -
                             demand[static_cast<std::size_t>(k)][static_cast<std::size_t>(g - 1)],
                         0);
    }
    return s;
}

double sub_fitness(const Roster& roster, std::span<const int> grade_set,
                   const NurseInstance& instance, double w) {
    if (grade_set.empty()) throw std::invalid_argument("empty grade set");
    std::array<char, kGradeCount + 1> in_set{};
    for (int g : grade_set) in_set[static_cast<std::size_t>(g)] = 1;

    double objective = 0.0;
    std::array<std::array<int, kGradeCount>, kShiftCount> exact{};
    for (std::size_t i = 0; i < roster.size(); ++i) {
        int g = instance.nurses[i].grade;
        if (!in_set[static_cast<std::size_t>(g)]) continue;
        objective += instance.cost_of(i, roster[i]);
        const ShiftPattern& p = instance.patterns[static_cast<std::size_t>(roster[i])];
        for (int k = 0; k < kShiftCount; ++k)
            if (p.works(k)) ++exact[static_cast<std::size_t>(k)][static_cast<std::size_t>(g - 1)];
    }

    auto pseudo = pseudo_demand(instance.demand);
    int shortfall = 0;
    for (int g : grade_set)
        for (int k = 0; k < kShiftCount; ++k)
            shortfall += std::max(pseudo[static_cast<std::size_t>(k)][static_cast<std::size_t>(g - 1)] -
                                      exact[static_cast<std::size_t>(k)][static_cast<std::size_t>(g - 1)],
                                  0);
    return objective + w * shortfall;
}

double extended_penalty(const Roster& roster, const NurseInstance& instance, double w_head,
                        double w_team) {
    int heads_sunday = 0, heads_saturday = 0;
    std::vector<std::array<int, kShiftCount>> team_counts;
    int max_team = -1;
    for (const NurseSpec& n : instance.nurses) max_team = std::max(max_team, n.team.value_or(-1));
    team_counts.assign(static_cast<std::size_t>(max_team + 1), {});

    for (std::size_t i = 0; i < roster.size(); ++i) {
        const NurseSpec& nurse = instance.nurses[i];
        const ShiftPattern& p = instance.patterns[static_cast<std::size_t>(roster[i])];
        if (nurse.is_head) {
            heads_sunday += (p.works(kSunday) ? 1 : 0) + (p.works(kSunday + kDaysPerWeek) ? 1 : 0);
            heads_saturday +=
                (p.works(kSaturday) ? 1 : 0) + (p.works(kSaturday + kDaysPerWeek) ? 1 : 0);
        }
        if (nurse.team) {
            auto& counts = team_counts[static_cast<std::size_t>(*nurse.team)];
            for (int k = 0; k < kShiftCount; ++k)
                if (p.works(k)) ++counts[static_cast<std::size_t>(k)];
        }
    }

    double penalty =
        w_head * (std::max(heads_sunday - 1, 0) + std::max(heads_saturday - 1, 0));
    for (const auto& counts : team_counts) {
        for (int k = 0; k < kDaysPerWeek; ++k)
            penalty += w_team * std::max(2 - counts[static_cast<std::size_t>(k)], 0);
        for (int k = kDaysPerWeek; k < kShiftCount; ++k)
            penalty += w_team * std::max(1 - counts[static_cast<std::size_t>(k)], 0);
    }
    return penalty;
}

BalanceClass classify_balance(const CoverState& cover, bool fully_feasible) {
    if (fully_feasible) return BalanceClass::Feasible;
    bool day_short = false, day_surplus = false, night_short = false, night_surplus = false;
    for (int k = 0; k < kDaysPerWeek; ++k) {
        if (cover.surplus[static_cast<std::size_t>(k)] < 0) day_short = true;
        if (cover.surplus[static_cast<std::size_t>(k)] > 0) day_surplus = true;
    }
    for (int k = kDaysPerWeek; k < kShiftCount; ++k) {
        if (cover.surplus[static_cast<std::size_t>(k)] < 0) night_short = true;
        if (cover.surplus[static_cast<std::size_t>(k)] > 0) night_surplus = true;
    }
    // One-nurse-fixable situations: all imbalance on one side. A pure day
    // shortage without any surplus also counts (the special-swap situation,
    // which keeps its bonus).
    if (day_short && day_surplus && !night_short && !night_surplus) return BalanceClass::Balanced;
    if (night_short && night_surplus && !day_short && !day_surplus) return BalanceClass::Balanced;
    if (day_short && !day_surplus && !night_short && !night_surplus) return BalanceClass::Balanced;
    if (day_short && !day_surplus && !night_short) return BalanceClass::Unbalanced;
    if (night_short && !day_short && !night_surplus) return BalanceClass::Unbalanced;
    return BalanceClass::Undecided;
}

BalanceClass classify_balance(const Roster& roster, const NurseInstance& instance) {
    CoverState cover = compute_cover(roster, instance);
    return classify_balance(cover, cover.total_shortfall() == 0);
}

double apply_incentives(double fitness, BalanceClass cls, double w, const IncentiveConfig& cfg) {
    switch (cls) {
        case BalanceClass::Balanced: return fitness - cfg.incentive * w;
        case BalanceClass::Unbalanced: return fitness + cfg.disincentive * w;
        default: return fitness;
    }
}

void validate_instance(const NurseInstance& instance) {
    auto fail = [](const std::string& what) { throw std::invalid_argument(what); };
    if (instance.nurses.empty()) fail("instance has no nurses");
    if (instance.feasible.size() != instance.nurses.size() ||
        instance.costs.size() != instance.nurses.size())
        fail("feasible sets / cost rows do not match nurse count");

    int last_real_grade = 0;
    bool seen_dummy = false;
    for (std::size_t i = 0; i < instance.nurses.size(); ++i) {
        const NurseSpec& n = instance.nurses[i];
        if (n.grade < 1 || n.grade > kGradeCount) fail("nurse grade out of range");
        if (n.is_dummy_or_bank()) {
            seen_dummy = true;
        } else {
            if (seen_dummy) fail("dummy or bank nurses must come after real nurses");
            if (n.grade < last_real_grade) fail("nurses must be sorted by grade");
            last_real_grade = n.grade;
            if (!n.combined && n.day_shifts > 0 && n.night_shifts > n.day_shifts)
                fail("standard contract has more nights than days");
        }
        for (const ShiftRequest& r : n.requests) {
            if (r.grade < 1 || r.grade > 5) fail("request grade out of range");
            if (r.shift < 0 || r.shift >= kShiftCount) fail("request shift out of range");
        }
        if (instance.feasible[i].empty()) fail("empty feasible set");
        if (instance.feasible[i].size() != instance.costs[i].size())
            fail("cost row not parallel to feasible set");
        for (int c : instance.costs[i])
            if (c < 0 || c > 100) fail("pattern cost outside [0, 100]");
        for (int pid : instance.feasible[i])
            if (pid < 0 || static_cast<std::size_t>(pid) >= instance.patterns.size())
                fail("feasible pattern index out of range");
    }
    for (int k = 0; k < kShiftCount; ++k) {
        int prev = 0;
        for (int s = 0; s < kGradeCount; ++s) {
            int r = instance.demand[static_cast<std::size_t>(k)][static_cast<std::size_t>(s)];
            if (r < 0) fail("negative demand");
            if (r < prev) fail("demand not cumulative across grades");
            prev = r;
        }
    }
}

}  // namespace mcga::nurse
