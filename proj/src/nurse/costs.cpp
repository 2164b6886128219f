#include <algorithm>
#include <stdexcept>

#include "mcga/nurse/domain.hpp"

namespace mcga::nurse {

namespace {

const int kRequestCost[5] = {3, 8, 12, 18, 90};

bool worked_calendar_day(const std::array<std::uint8_t, kShiftCount>& bits, int day) {
    return bits[static_cast<std::size_t>(day)] != 0 ||
           bits[static_cast<std::size_t>(day + kDaysPerWeek)] != 0;
}

int trailing_work_streak(const std::array<std::uint8_t, kShiftCount>& last_week) {
    int streak = 0;
    for (int d = kDaysPerWeek - 1; d >= 0; --d) {
        if (!worked_calendar_day(last_week, d)) break;
        ++streak;
    }
    return streak;
}

}  // namespace

std::vector<int> build_pij(const NurseSpec& nurse, const NurseInstance& instance,
                           std::span<const int> feasible, bool deduct_one) {
    std::vector<int> row;
    row.reserve(feasible.size());
    if (nurse.is_dummy_or_bank()) {
        row.assign(feasible.size(), 0);
        return row;
    }
    for (const ShiftRequest& req : nurse.requests) {
        if (req.grade < 1 || req.grade > 5)
            throw std::invalid_argument("request grade must be 1..5");
        if (req.shift < 0 || req.shift >= kShiftCount)
            throw std::invalid_argument("request shift must be 0..13");
    }

    const WorkHistory& hist = nurse.history;
    const int carry = trailing_work_streak(hist.last_week_bits);
    const bool ended_off_on = !worked_calendar_day(hist.last_week_bits, 5) &&
                              worked_calendar_day(hist.last_week_bits, 6);
    const bool ended_off = !worked_calendar_day(hist.last_week_bits, 6);

    for (int pattern_id : feasible) {
        const ShiftPattern& p = instance.patterns[static_cast<std::size_t>(pattern_id)];
        int cost = p.base_cost;

        // day / night preference class
        bool has_nights = p.night_count() > 0;
        bool has_days = p.day_count() > 0;
        switch (nurse.preference) {
            case PreferenceClass::DaysImportant: cost += has_nights ? 12 : 0; break;
            case PreferenceClass::NightsImportant: cost += has_days ? 12 : 0; break;
            case PreferenceClass::DaysPreferred: cost += has_nights ? 3 : 0; break;
            case PreferenceClass::NightsPreferred: cost += has_days ? 3 : 0; break;
            default: break;
        }

        for (const ShiftRequest& req : nurse.requests)
            if (p.works(req.shift)) cost += kRequestCost[req.grade - 1];

        // work stretch across the week boundary
        if (p.works_calendar_day(0) && carry > 0) {
            int run = 0;
            while (run < kDaysPerWeek && p.works_calendar_day(run)) ++run;
            cost += std::max(carry + run - 7, 0);
        }

        // continuity with last week's ending
        if (ended_off_on && !p.works_calendar_day(0)) cost += 3;
        if (ended_off && p.works_calendar_day(0) && !p.works_calendar_day(1)) cost += 3;

        // night rotation
        if (has_nights) {
            if (hist.nights_last_week) cost += 10;
            if (hist.nights_week_before) cost += 5;
        }

        // weekend rotation
        if (hist.weekend_last_week &&
            (p.works(kSunday) || p.works(kSaturday) || p.works(kSunday + kDaysPerWeek) ||
             p.works(kSaturday + kDaysPerWeek)))
            cost += 1;

        if (deduct_one) cost -= 1;
        if (cost > 89) cost = 100;
        if (cost != 0) cost = std::min(cost + hist.last_week_pattern_cost, 100);
        row.push_back(cost);
    }
    return row;
}

void build_all_costs(NurseInstance& instance, bool deduct_one) {
    instance.costs.assign(instance.nurses.size(), {});
    for (std::size_t i = 0; i < instance.nurses.size(); ++i)
        instance.costs[i] =
            build_pij(instance.nurses[i], instance, instance.feasible[i], deduct_one);
}

}  // namespace mcga::nurse
