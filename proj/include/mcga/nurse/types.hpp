#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace mcga::nurse {

// Shift indexing: 0..6 are the day shifts Sunday..Saturday, 7..13 the nights.
inline constexpr int kShiftCount = 14;
inline constexpr int kDaysPerWeek = 7;
inline constexpr int kGradeCount = 3;

inline constexpr int kSunday = 0;
inline constexpr int kSaturday = 6;

enum class PatternKind { Day, Night, Combined };

struct ShiftPattern {
    std::array<std::uint8_t, kShiftCount> bits{};
    PatternKind kind = PatternKind::Day;
    int base_cost = 1;  // 1..4, 18 for night-day-night combined patterns

    int day_count() const {
        int c = 0;
        for (int k = 0; k < kDaysPerWeek; ++k) c += bits[static_cast<std::size_t>(k)];
        return c;
    }
    int night_count() const {
        int c = 0;
        for (int k = kDaysPerWeek; k < kShiftCount; ++k) c += bits[static_cast<std::size_t>(k)];
        return c;
    }
    bool works(int shift) const { return bits[static_cast<std::size_t>(shift)] != 0; }
    // Worked that calendar day on either the day or the night shift.
    bool works_calendar_day(int day) const {
        return bits[static_cast<std::size_t>(day)] != 0 ||
               bits[static_cast<std::size_t>(day + kDaysPerWeek)] != 0;
    }
    bool operator==(const ShiftPattern&) const = default;
};

enum class PreferenceClass {
    Neutral,
    DaysOnly,
    NightsOnly,
    DaysImportant,
    NightsImportant,
    DaysPreferred,
    NightsPreferred
};

// Per-shift requests not to work, graded 1 (mild) to 5 (binding).
struct ShiftRequest {
    int shift = 0;  // 0..13
    int grade = 1;  // 1..5
    bool operator==(const ShiftRequest&) const = default;
};

struct WorkHistory {
    std::array<std::uint8_t, kShiftCount> last_week_bits{};
    bool nights_last_week = false;
    bool nights_week_before = false;
    bool weekend_last_week = false;  // worked both Saturday and Sunday
    int last_week_pattern_cost = 0;
    bool operator==(const WorkHistory&) const = default;
};

enum class DummyKind { None, WeekendDummy, WeekdayDummy, Bank };

struct NurseSpec {
    int id = 0;
    int grade = 3;       // 1 (highest) .. 3
    int day_shifts = 0;  // D_i, shifts per week if working days
    int night_shifts = 0;  // N_i, shifts per week if working nights
    // Fixed (days, nights) split for nurses who must work both in one week.
    std::optional<std::pair<int, int>> combined;
    PreferenceClass preference = PreferenceClass::Neutral;
    std::vector<ShiftRequest> requests;
    WorkHistory history;
    bool is_head = false;
    std::optional<int> team;
    DummyKind dummy = DummyKind::None;

    bool is_special() const { return combined.has_value(); }
    bool is_dummy_or_bank() const { return dummy != DummyKind::None; }
    bool operator==(const NurseSpec&) const = default;
};

// Cumulative demand matrix: demand[k][s] is the number of nurses of grade
// <= s+1 required on shift k. Non-decreasing in s for every k.
using Demand = std::array<std::array<int, kGradeCount>, kShiftCount>;

struct NurseInstance {
    std::string name;
    std::vector<NurseSpec> nurses;  // sorted by grade, dummies and banks last
    Demand demand{};
    std::vector<ShiftPattern> patterns;       // global pattern table
    std::vector<std::vector<int>> feasible;   // per nurse, indices into `patterns`
    std::vector<std::vector<int>> costs;      // per nurse, parallel to `feasible`

    std::size_t nurse_count() const { return nurses.size(); }

    // Position of a global pattern index within a nurse's feasible set, or -1.
    std::vector<std::vector<int>> feasible_pos;  // built by finalize()

    void finalize();

    int cost_of(std::size_t nurse, int pattern_id) const {
        int pos = feasible_pos[nurse][static_cast<std::size_t>(pattern_id)];
        return costs[nurse][static_cast<std::size_t>(pos)];
    }
    bool in_feasible_set(std::size_t nurse, int pattern_id) const {
        return pattern_id >= 0 &&
               static_cast<std::size_t>(pattern_id) < patterns.size() &&
               feasible_pos[nurse][static_cast<std::size_t>(pattern_id)] >= 0;
    }
};

// Direct genotype: one global pattern index per nurse, each within F(i).
using Roster = std::vector<int>;

struct CoverState {
    // provided[k][s]: nurses of grade <= s+1 working shift k.
    std::array<std::array<int, kGradeCount>, kShiftCount> provided{};
    std::array<std::array<int, kGradeCount>, kShiftCount> shortfall{};
    // Aggregate (total-grade) balance per shift: provided - required.
    std::array<int, kShiftCount> surplus{};

    int total_shortfall() const {
        int s = 0;
        for (const auto& row : shortfall)
            for (int v : row) s += v;
        return s;
    }
};

struct NurseEval {
    int objective = 0;       // sum of assigned pattern costs
    int violation = 0;       // uncovered (shift, grade) units
    double extra_penalty = 0.0;  // head-nurse / team extension penalty
    bool feasible = false;
};

enum class BalanceClass { Feasible, Balanced, Unbalanced, Undecided };

}  // namespace mcga::nurse
