#include <algorithm>
#include <bit>
#include <map>
#include <stdexcept>

#include "mcga/nurse/domain.hpp"

namespace mcga::nurse {

namespace {

// All k-subsets of {0..6} in lexicographic order.
std::vector<std::array<std::uint8_t, kDaysPerWeek>> day_combinations(int k) {
    std::vector<std::array<std::uint8_t, kDaysPerWeek>> out;
    if (k < 0 || k > kDaysPerWeek) return out;
    std::array<int, kDaysPerWeek> pick{};
    for (int i = 0; i < k; ++i) pick[static_cast<std::size_t>(i)] = i;
    while (true) {
        std::array<std::uint8_t, kDaysPerWeek> bits{};
        for (int i = 0; i < k; ++i) bits[static_cast<std::size_t>(pick[static_cast<std::size_t>(i)])] = 1;
        out.push_back(bits);
        // advance combination
        int i = k - 1;
        while (i >= 0 && pick[static_cast<std::size_t>(i)] == kDaysPerWeek - k + i) --i;
        if (i < 0) break;
        ++pick[static_cast<std::size_t>(i)];
        for (int j = i + 1; j < k; ++j)
            pick[static_cast<std::size_t>(j)] = pick[static_cast<std::size_t>(j - 1)] + 1;
    }
    return out;
}

int block_count(std::span<const std::uint8_t> bits) {
    int blocks = 0;
    bool in_block = false;
    for (std::uint8_t b : bits) {
        if (b && !in_block) ++blocks;
        in_block = b != 0;
    }
    return blocks;
}

ShiftPattern make_pattern(const std::array<std::uint8_t, kDaysPerWeek>& days,
                          const std::array<std::uint8_t, kDaysPerWeek>& nights) {
    ShiftPattern p;
    for (int i = 0; i < kDaysPerWeek; ++i) {
        p.bits[static_cast<std::size_t>(i)] = days[static_cast<std::size_t>(i)];
        p.bits[static_cast<std::size_t>(i + kDaysPerWeek)] = nights[static_cast<std::size_t>(i)];
    }
    int dc = p.day_count(), nc = p.night_count();
    p.kind = dc > 0 && nc > 0 ? PatternKind::Combined
                              : (nc > 0 ? PatternKind::Night : PatternKind::Day);
    p.base_cost = pattern_base_cost(p);
    return p;
}

std::uint16_t day_mask(const ShiftPattern& p) {
    std::uint16_t m = 0;
    for (int k = 0; k < kDaysPerWeek; ++k)
        if (p.works(k)) m |= static_cast<std::uint16_t>(1u << k);
    return m;
}

std::uint16_t night_mask(const ShiftPattern& p) {
    std::uint16_t m = 0;
    for (int k = kDaysPerWeek; k < kShiftCount; ++k)
        if (p.works(k)) m |= static_cast<std::uint16_t>(1u << (k - kDaysPerWeek));
    return m;
}

}  // namespace

int pattern_base_cost(const ShiftPattern& p) {
    if (p.kind == PatternKind::Combined) {
        // Night shifts, then a day shift, then further night shifts: 18.
        int first_night = -1, last_night = -1;
        for (int d = 0; d < kDaysPerWeek; ++d) {
            if (!p.works(d + kDaysPerWeek)) continue;
            if (first_night < 0) first_night = d;
            last_night = d;
        }
        for (int d = 0; d < kDaysPerWeek; ++d) {
            if (p.works(d) && d > first_night && d < last_night) return 18;
        }
        std::array<std::uint8_t, kDaysPerWeek> worked{};
        for (int d = 0; d < kDaysPerWeek; ++d)
            worked[static_cast<std::size_t>(d)] = p.works_calendar_day(d) ? 1 : 0;
        return std::clamp(block_count(worked), 1, 4);
    }
    std::span<const std::uint8_t> side =
        p.kind == PatternKind::Day ? std::span<const std::uint8_t>(p.bits.data(), kDaysPerWeek)
                                   : std::span<const std::uint8_t>(p.bits.data() + kDaysPerWeek,
                                                                   kDaysPerWeek);
    return std::clamp(block_count(side), 1, 4);
}

std::vector<ShiftPattern> enumerate_patterns(int day_shifts, int night_shifts,
                                             std::optional<std::pair<int, int>> combined) {
    std::vector<ShiftPattern> out;
    const std::array<std::uint8_t, kDaysPerWeek> none{};
    if (combined) {
        auto [d, n] = *combined;
        if (d <= 0 || n <= 0 || d > kDaysPerWeek || n > kDaysPerWeek)
            throw std::invalid_argument("combined contract needs day and night shifts");
        for (const auto& days : day_combinations(d))
            for (const auto& nights : day_combinations(n)) out.push_back(make_pattern(days, nights));
        return out;
    }
    if (day_shifts == 0 && night_shifts == 0)
        throw std::invalid_argument("nurse works nothing");
    if (day_shifts < 0 || day_shifts > kDaysPerWeek || night_shifts < 0 ||
        night_shifts > kDaysPerWeek)
        throw std::invalid_argument("shift counts must be within one week");
    if (day_shifts > 0)
        for (const auto& days : day_combinations(day_shifts)) out.push_back(make_pattern(days, none));
    if (night_shifts > 0)
        for (const auto& nights : day_combinations(night_shifts))
            out.push_back(make_pattern(none, nights));
    return out;
}

int adjacency_degree(const ShiftPattern& a, const ShiftPattern& b) {
    if (a.kind == b.kind) {
        if (a.day_count() != b.day_count() || a.night_count() != b.night_count())
            throw std::invalid_argument("adjacency needs matching shift counts");
        return std::popcount(static_cast<unsigned>(day_mask(a) & ~day_mask(b))) +
               std::popcount(static_cast<unsigned>(night_mask(a) & ~night_mask(b)));
    }
    if (a.kind == PatternKind::Combined || b.kind == PatternKind::Combined)
        throw std::invalid_argument("adjacency undefined between combined and plain patterns");
    const ShiftPattern& day_pattern = a.kind == PatternKind::Day ? a : b;
    return day_pattern.day_count();
}

void build_pattern_table(NurseInstance& instance) {
    instance.patterns.clear();
    instance.feasible.assign(instance.nurses.size(), {});
    std::map<std::array<std::uint8_t, kShiftCount>, int> index_of;

    for (std::size_t i = 0; i < instance.nurses.size(); ++i) {
        const NurseSpec& nurse = instance.nurses[i];
        int days = nurse.day_shifts, nights = nurse.night_shifts;
        if (nurse.preference == PreferenceClass::DaysOnly) nights = 0;
        if (nurse.preference == PreferenceClass::NightsOnly) days = 0;
        for (const ShiftPattern& p : enumerate_patterns(days, nights, nurse.combined)) {
            auto [it, inserted] =
                index_of.try_emplace(p.bits, static_cast<int>(instance.patterns.size()));
            if (inserted) instance.patterns.push_back(p);
            instance.feasible[i].push_back(it->second);
        }
    }
}

void NurseInstance::finalize() {
    feasible_pos.assign(nurses.size(), std::vector<int>(patterns.size(), -1));
    for (std::size_t i = 0; i < nurses.size(); ++i)
        for (std::size_t pos = 0; pos < feasible[i].size(); ++pos)
            feasible_pos[i][static_cast<std::size_t>(feasible[i][pos])] = static_cast<int>(pos);
}

}  // namespace mcga::nurse
