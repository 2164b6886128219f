#include <algorithm>
#include <stdexcept>

#include "mcga/nurse/domain.hpp"

namespace mcga::nurse {

namespace {

void raise_days(Demand& demand, bool weekdays_only) {
    for (int k = 0; k < kDaysPerWeek; ++k) {
        if (weekdays_only && (k == kSunday || k == kSaturday)) continue;
        demand[static_cast<std::size_t>(k)][kGradeCount - 1] += 1;
    }
}

NurseSpec make_extra(DummyKind kind, int day_shifts) {
    NurseSpec n;
    n.grade = kGradeCount;
    n.day_shifts = day_shifts;
    n.night_shifts = 0;
    n.preference = PreferenceClass::DaysOnly;
    n.dummy = kind;
    return n;
}

}  // namespace

SmoothResult smooth_ladder(const Demand& demand, int day_overcover) {
    SmoothResult result;
    result.demand = demand;
    result.day_overcover = day_overcover;
    int u = day_overcover;

    if (u < 0) {
        for (int b = 0; b < -u; ++b) result.added_nurses.push_back(make_extra(DummyKind::Bank, 1));
        return result;
    }
    while (u > 7) {
        raise_days(result.demand, false);
        u -= 7;
    }
    if (u == 7) {
        raise_days(result.demand, false);
    } else if (u == 6) {
        raise_days(result.demand, false);
        result.added_nurses.push_back(make_extra(DummyKind::WeekendDummy, 1));
    } else if (u == 5) {
        raise_days(result.demand, true);
    } else if (u >= 1) {
        raise_days(result.demand, true);
        result.added_nurses.push_back(make_extra(DummyKind::WeekdayDummy, 5 - u));
    }
    return result;
}

SmoothResult knapsack_smooth(const Demand& demand, std::span<const NurseSpec> nurses) {
    int night_demand = 0;
    for (int k = kDaysPerWeek; k < kShiftCount; ++k)
        night_demand += demand[static_cast<std::size_t>(k)][kGradeCount - 1];
    int day_demand = 0;
    for (int k = 0; k < kDaysPerWeek; ++k)
        day_demand += demand[static_cast<std::size_t>(k)][kGradeCount - 1];

    int fixed_nights = 0;
    int day_supply = 0;
    std::vector<const NurseSpec*> flexible;
    for (const NurseSpec& n : nurses) {
        if (n.is_dummy_or_bank()) continue;
        if (n.combined) {
            day_supply += n.combined->first;
            fixed_nights += n.combined->second;
        } else if (n.preference == PreferenceClass::NightsOnly) {
            fixed_nights += n.night_shifts;
        } else if (n.preference == PreferenceClass::DaysOnly || n.night_shifts == 0) {
            day_supply += n.day_shifts;
        } else {
            flexible.push_back(&n);
        }
    }

    // Put the fewest possible night shifts on nights so the day shifts
    // available are maximal, subject to the nights being covered.
    int remaining = std::max(night_demand - fixed_nights, 0);
    int total_flex_nights = 0;
    for (const NurseSpec* n : flexible) total_flex_nights += n->night_shifts;
    if (remaining > total_flex_nights)
        throw std::invalid_argument("night demand exceeds available night shifts");

    std::vector<char> on_nights(flexible.size(), 0);
    if (remaining > 0) {
        const int cap = total_flex_nights;
        // reachable[i][s]: some subset of the first i nurses supplies s nights
        std::vector<std::vector<char>> reachable(flexible.size() + 1,
                                                 std::vector<char>(static_cast<std::size_t>(cap) + 1, 0));
        reachable[0][0] = 1;
        for (std::size_t i = 0; i < flexible.size(); ++i) {
            int n_i = flexible[i]->night_shifts;
            for (int s = 0; s <= cap; ++s) {
                if (!reachable[i][static_cast<std::size_t>(s)]) continue;
                reachable[i + 1][static_cast<std::size_t>(s)] = 1;
                if (s + n_i <= cap) reachable[i + 1][static_cast<std::size_t>(s + n_i)] = 1;
            }
        }
        int best = -1;
        for (int s = remaining; s <= cap; ++s)
            if (reachable[flexible.size()][static_cast<std::size_t>(s)]) {
                best = s;
                break;
            }
        int s = best;
        for (std::size_t i = flexible.size(); i-- > 0;) {
            if (reachable[i][static_cast<std::size_t>(s)]) continue;  // not needed on nights
            on_nights[i] = 1;
            s -= flexible[i]->night_shifts;
        }
    }

    for (std::size_t i = 0; i < flexible.size(); ++i)
        if (!on_nights[i]) day_supply += flexible[i]->day_shifts;

    return smooth_ladder(demand, day_supply - day_demand);
}

void apply_smoothing(NurseInstance& instance, const SmoothResult& result) {
    instance.demand = result.demand;
    int next_id = 0;
    for (const NurseSpec& n : instance.nurses) next_id = std::max(next_id, n.id + 1);
    for (NurseSpec extra : result.added_nurses) {
        extra.id = next_id++;
        instance.nurses.push_back(extra);
    }
    build_pattern_table(instance);
    build_all_costs(instance);
    instance.finalize();
}

}  // namespace mcga::nurse
