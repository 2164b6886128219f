#include <algorithm>
#include <numeric>
#include <stdexcept>

#include "mcga/nurse/direct.hpp"
#include "mcga/nurse/domain.hpp"
#include "mcga/nurse/generator.hpp"
#include "mcga/nurse/indirect.hpp"
#include "mcga/rng.hpp"

namespace mcga::nurse {

namespace {

struct ContractOption {
    int days;
    int nights;
    double weight;
};

// Full time 5/4 plus the common part time options.
const ContractOption kContracts[] = {
    {5, 4, 0.50}, {4, 3, 0.20}, {3, 3, 0.15}, {3, 2, 0.15}};

PreferenceClass sample_preference(Rng& rng) {
    double u = rng.uniform_real();
    if (u < 0.70) return PreferenceClass::Neutral;
    if (u < 0.78) return PreferenceClass::DaysOnly;
    if (u < 0.84) return PreferenceClass::NightsOnly;
    if (u < 0.88) return PreferenceClass::DaysImportant;
    if (u < 0.90) return PreferenceClass::NightsImportant;
    if (u < 0.96) return PreferenceClass::DaysPreferred;
    return PreferenceClass::NightsPreferred;
}

WorkHistory sample_history(const NurseSpec& nurse, Rng& rng) {
    WorkHistory hist;
    bool last_week_nights =
        nurse.preference == PreferenceClass::NightsOnly ||
        (nurse.preference != PreferenceClass::DaysOnly && nurse.night_shifts > 0 &&
         rng.bernoulli(0.25));
    int shifts = last_week_nights ? nurse.night_shifts : nurse.day_shifts;
    shifts = std::clamp(shifts, 1, kDaysPerWeek);
    std::array<int, kDaysPerWeek> days{};
    std::iota(days.begin(), days.end(), 0);
    rng.shuffle(std::span<int>(days.data(), days.size()));
    for (int i = 0; i < shifts; ++i) {
        int d = days[static_cast<std::size_t>(i)];
        hist.last_week_bits[static_cast<std::size_t>(last_week_nights ? d + kDaysPerWeek : d)] = 1;
    }
    hist.nights_last_week = last_week_nights;
    hist.nights_week_before = rng.bernoulli(0.2);
    bool sat = hist.last_week_bits[kSaturday] || hist.last_week_bits[kSaturday + kDaysPerWeek];
    bool sun = hist.last_week_bits[kSunday] || hist.last_week_bits[kSunday + kDaysPerWeek];
    hist.weekend_last_week = sat && sun;
    hist.last_week_pattern_cost = static_cast<int>(rng.uniform_int(0, 3));
    return hist;
}

void sample_requests(NurseSpec& nurse, Rng& rng) {
    int count = static_cast<int>(rng.uniform_int(0, 3));
    for (int r = 0; r < count; ++r) {
        ShiftRequest req;
        req.shift = static_cast<int>(rng.uniform_int(0, kShiftCount - 1));
        double u = rng.uniform_real();
        req.grade = u < 0.40 ? 1 : u < 0.65 ? 2 : u < 0.85 ? 3 : u < 0.95 ? 4 : 5;
        nurse.requests.push_back(req);
    }
}

// Reference roster: each nurse gets a uniformly chosen pattern from the side
// she is designated to work. Returns global pattern ids.
Roster sample_reference_roster(const NurseInstance& instance, std::span<const char> on_nights,
                               Rng& rng) {
    Roster roster(instance.nurse_count());
    for (std::size_t i = 0; i < instance.nurse_count(); ++i) {
        std::vector<int> side;
        for (int pid : instance.feasible[i]) {
            const ShiftPattern& p = instance.patterns[static_cast<std::size_t>(pid)];
            if (instance.nurses[i].is_special() ||
                (on_nights[i] ? p.kind == PatternKind::Night : p.kind == PatternKind::Day))
                side.push_back(pid);
        }
        if (side.empty()) side = instance.feasible[i];
        roster[i] = side[rng.uniform_index(side.size())];
    }
    return roster;
}

// Cumulative demand spreading the designated supply evenly over the week,
// weekdays filled first, with occasional slack at grades one and two so that
// higher grades can substitute. Hospital-style: the same requirement on
// every day, remainder units on the weekdays.
Demand build_smooth_demand(const NurseInstance& instance, std::span<const char> on_nights,
                           Rng& rng) {
    std::array<long, kGradeCount> day_supply{}, night_supply{};
    for (std::size_t i = 0; i < instance.nurse_count(); ++i) {
        const NurseSpec& nurse = instance.nurses[i];
        for (int s = nurse.grade - 1; s < kGradeCount; ++s) {
            if (nurse.is_special()) {
                day_supply[static_cast<std::size_t>(s)] += nurse.combined->first;
                night_supply[static_cast<std::size_t>(s)] += nurse.combined->second;
            } else if (on_nights[i]) {
                night_supply[static_cast<std::size_t>(s)] += nurse.night_shifts;
            } else {
                day_supply[static_cast<std::size_t>(s)] += nurse.day_shifts;
            }
        }
    }

    // weekdays first, weekend last
    const std::array<int, kDaysPerWeek> fill_order{1, 2, 3, 4, 5, 0, 6};
    Demand demand{};
    for (int s = 0; s < kGradeCount; ++s) {
        long day_base = day_supply[static_cast<std::size_t>(s)] / 7;
        long day_rem = day_supply[static_cast<std::size_t>(s)] % 7;
        long night_base = night_supply[static_cast<std::size_t>(s)] / 7;
        long night_rem = night_supply[static_cast<std::size_t>(s)] % 7;
        for (int rank = 0; rank < kDaysPerWeek; ++rank) {
            int k = fill_order[static_cast<std::size_t>(rank)];
            demand[static_cast<std::size_t>(k)][static_cast<std::size_t>(s)] =
                static_cast<int>(day_base + (rank < day_rem ? 1 : 0));
            demand[static_cast<std::size_t>(k + kDaysPerWeek)][static_cast<std::size_t>(s)] =
                static_cast<int>(night_base + (rank < night_rem ? 1 : 0));
        }
    }
    // slack at the two higher grade bands keeps substitution room
    for (int k = 0; k < kShiftCount; ++k) {
        auto& row = demand[static_cast<std::size_t>(k)];
        if (row[0] > 0 && rng.bernoulli(0.4)) --row[0];
        if (row[1] > row[0] && rng.bernoulli(0.3)) --row[1];
    }
    // night granularity: the covering pre-pass cannot avoid some night
    // surplus, so a couple of night cells stay slack; days are handed to the
    // smoothing ladder untouched
    int night_slack = static_cast<int>(rng.uniform_int(1, 3));
    for (int tries = 0; tries < 20 && night_slack > 0; ++tries) {
        int k = kDaysPerWeek + static_cast<int>(rng.uniform_int(0, kDaysPerWeek - 1));
        auto& row = demand[static_cast<std::size_t>(k)];
        if (row[2] > row[1]) {
            --row[2];
            --night_slack;
        }
    }
    return demand;
}

NurseInstance try_generate(const GenSpec& spec, std::uint64_t seed);

// A cheap feasibility probe: greedy cover plus repeated hill climbing.
bool probe_feasible(const NurseInstance& instance, Rng& rng) {
    ops::PermutationString perm(instance.nurse_count());
    std::iota(perm.begin(), perm.end(), 0);
    for (int attempt = 0; attempt < 8; ++attempt) {
        Roster roster = decode_cover_highest(perm, instance);
        for (int pass = 0; pass < 4; ++pass) {
            if (evaluate(roster, instance).violation == 0) return true;
            roster = hill_climb_repair(roster, instance, 1000.0);
            roster = adjacent_swap(roster, instance);
        }
        if (evaluate(roster, instance).violation == 0) return true;
        rng.shuffle(perm);
    }
    return false;
}

void randomize_costs(NurseInstance& instance, CostVariant variant, Rng& rng) {
    if (variant == CostVariant::RandomCost) {
        for (std::size_t i = 0; i < instance.nurse_count(); ++i) {
            if (instance.nurses[i].is_dummy_or_bank()) continue;
            for (int& c : instance.costs[i]) c = static_cast<int>(rng.uniform_int(0, 100));
        }
    } else if (variant == CostVariant::HighPatternCost) {
        // Base cost contributions become (base - 1) * 20 before the other
        // cost rules run.
        std::vector<ShiftPattern> scaled = instance.patterns;
        for (ShiftPattern& p : scaled) p.base_cost = (p.base_cost - 1) * 20;
        std::swap(instance.patterns, scaled);
        build_all_costs(instance, /*deduct_one=*/false);
        std::swap(instance.patterns, scaled);
    }
}

}  // namespace

NurseInstance generate_nurse_instance(const GenSpec& spec, std::uint64_t seed) {
    if (spec.nurse_count < 3) throw std::invalid_argument("too few nurses");
    for (int attempt = 0; attempt < 50; ++attempt) {
        NurseInstance instance =
            try_generate(spec, hash_combine_u64(seed, static_cast<std::uint64_t>(attempt)));
        Rng probe_rng(hash_combine_u64(seed, 0xfea51b1eULL + static_cast<std::uint64_t>(attempt)));
        if (probe_feasible(instance, probe_rng)) {
            if (spec.name.empty())
                instance.name =
                    "nurse-" + cost_variant_name(spec.variant) + "-" + std::to_string(seed);
            return instance;
        }
    }
    throw std::runtime_error("could not generate a provably feasible nurse instance");
}

namespace {

NurseInstance try_generate(const GenSpec& spec, std::uint64_t seed) {
    Rng rng(seed);
    NurseInstance instance;
    instance.name = spec.name.empty()
                        ? "nurse-" + cost_variant_name(spec.variant) + "-" + std::to_string(seed)
                        : spec.name;

    // grade mix: roughly 20% / 30% / 50%, at least two per grade
    int n = spec.nurse_count;
    int g1 = std::max(2, n / 5);
    int g2 = std::max(2, (3 * n) / 10);
    int g3 = n - g1 - g2;
    std::vector<int> grades;
    grades.insert(grades.end(), static_cast<std::size_t>(g1), 1);
    grades.insert(grades.end(), static_cast<std::size_t>(g2), 2);
    grades.insert(grades.end(), static_cast<std::size_t>(g3), 3);

    for (int i = 0; i < n; ++i) {
        NurseSpec nurse;
        nurse.id = i;
        nurse.grade = grades[static_cast<std::size_t>(i)];
        double u = rng.uniform_real();
        double acc = 0.0;
        for (const ContractOption& c : kContracts) {
            acc += c.weight;
            if (u < acc || &c == &kContracts[3]) {
                nurse.day_shifts = c.days;
                nurse.night_shifts = c.nights;
                break;
            }
        }
        nurse.preference = sample_preference(rng);
        // occasionally a special nurse on a fixed day/night split
        if (n >= 10 && nurse.preference == PreferenceClass::Neutral && rng.bernoulli(0.06)) {
            nurse.combined = std::make_pair(std::max(nurse.day_shifts - 2, 1), 2);
            nurse.preference = PreferenceClass::Neutral;
        }
        sample_requests(nurse, rng);
        nurse.history = sample_history(nurse, rng);
        instance.nurses.push_back(std::move(nurse));
    }

    if (spec.with_extensions) {
        // two head nurses among grade 1, two teams over all real nurses
        instance.nurses[0].is_head = true;
        instance.nurses[1].is_head = true;
        for (std::size_t i = 0; i < instance.nurses.size(); ++i)
            instance.nurses[i].team = static_cast<int>(i % 2);
    }

    build_pattern_table(instance);
    build_all_costs(instance);
    instance.finalize();

    // Designate sides, sample the reference roster and derive tight demand.
    std::vector<char> on_nights(instance.nurse_count(), 0);
    for (std::size_t i = 0; i < instance.nurse_count(); ++i) {
        const NurseSpec& nurse = instance.nurses[i];
        if (nurse.preference == PreferenceClass::NightsOnly)
            on_nights[i] = 1;
        else if (nurse.preference != PreferenceClass::DaysOnly && !nurse.is_special() &&
                 nurse.night_shifts > 0)
            on_nights[i] = rng.bernoulli(0.3) ? 1 : 0;
    }
    Demand demand = build_smooth_demand(instance, on_nights, rng);

    // Perturb the day demand so the smoothing ladder has work to do. The
    // withheld weekday cells are raised back by the ladder and any residue
    // is handed to dummy or bank nurses.
    int target_u = static_cast<int>(rng.uniform_int(-2, 5));
    if (target_u > 0) {
        int withheld = 0;
        for (int k = 1; k <= 5 && withheld < target_u; ++k) {
            auto& row = demand[static_cast<std::size_t>(k)];
            if (row[2] > row[1]) {
                --row[2];
                ++withheld;
            }
        }
    } else if (target_u < 0) {
        for (int short_by = 0; short_by < -target_u; ++short_by)
            ++demand[static_cast<std::size_t>(rng.uniform_int(0, 6))][2];
    }

    int day_supply = 0, day_demand = 0;
    for (std::size_t i = 0; i < instance.nurse_count(); ++i) {
        const NurseSpec& nurse = instance.nurses[i];
        if (nurse.is_special())
            day_supply += nurse.combined->first;
        else if (!on_nights[i])
            day_supply += nurse.day_shifts;
    }
    for (int k = 0; k < kDaysPerWeek; ++k) day_demand += demand[static_cast<std::size_t>(k)][2];

    SmoothResult smooth = smooth_ladder(demand, day_supply - day_demand);
    instance.demand = smooth.demand;
    if (!smooth.added_nurses.empty()) {
        SmoothResult apply_only;
        apply_only.demand = smooth.demand;
        apply_only.added_nurses = smooth.added_nurses;
        apply_smoothing(instance, apply_only);
    } else {
        instance.finalize();
    }

    randomize_costs(instance, spec.variant, rng);
    validate_instance(instance);
    return instance;
}

}  // namespace

NurseInstance generate_micro_instance(std::uint64_t seed) {
    Rng rng(seed);
    NurseInstance instance;
    instance.name = "nurse-micro-" + std::to_string(seed);

    const int n = rng.bernoulli(0.5) ? 3 : 4;
    for (int i = 0; i < n; ++i) {
        NurseSpec nurse;
        nurse.id = i;
        nurse.grade = i == 0 ? 1 : (i == 1 ? 2 : 3);
        bool day_side = i < n - 1 ? true : rng.bernoulli(0.5);
        int shifts = rng.bernoulli(0.5) ? 1 : 6;  // C(7,1)=7 or C(7,6)=7 patterns
        if (day_side) {
            nurse.preference = PreferenceClass::DaysOnly;
            nurse.day_shifts = shifts;
            nurse.night_shifts = 0;
        } else {
            nurse.preference = PreferenceClass::NightsOnly;
            nurse.day_shifts = shifts;
            nurse.night_shifts = shifts;
        }
        sample_requests(nurse, rng);
        nurse.history = sample_history(nurse, rng);
        instance.nurses.push_back(std::move(nurse));
    }
    std::stable_sort(instance.nurses.begin(), instance.nurses.end(),
                     [](const NurseSpec& a, const NurseSpec& b) { return a.grade < b.grade; });
    for (std::size_t i = 0; i < instance.nurses.size(); ++i)
        instance.nurses[i].id = static_cast<int>(i);

    build_pattern_table(instance);
    build_all_costs(instance);
    instance.finalize();

    std::vector<char> on_nights(instance.nurse_count(), 0);
    for (std::size_t i = 0; i < instance.nurse_count(); ++i)
        on_nights[i] = instance.nurses[i].preference == PreferenceClass::NightsOnly ? 1 : 0;
    Roster reference = sample_reference_roster(instance, on_nights, rng);
    CoverState cover = compute_cover(reference, instance);
    for (int k = 0; k < kShiftCount; ++k) {
        auto& row = instance.demand[static_cast<std::size_t>(k)];
        const auto& prov = cover.provided[static_cast<std::size_t>(k)];
        row[0] = std::max(prov[0] - static_cast<int>(rng.uniform_int(0, 1)), 0);
        row[1] = std::max(prov[1] - static_cast<int>(rng.uniform_int(0, 1)), row[0]);
        row[2] = std::max(prov[2], row[1]);
    }
    instance.finalize();
    validate_instance(instance);
    return instance;
}

CostVariant cost_variant_from_name(const std::string& name) {
    if (name == "structured") return CostVariant::Structured;
    if (name == "random") return CostVariant::RandomCost;
    if (name == "highcost") return CostVariant::HighPatternCost;
    throw std::invalid_argument("unknown nurse data variant: " + name);
}

std::string cost_variant_name(CostVariant v) {
    switch (v) {
        case CostVariant::Structured: return "structured";
        case CostVariant::RandomCost: return "random";
        case CostVariant::HighPatternCost: return "highcost";
    }
    return "structured";
}

}  // namespace mcga::nurse
