// Acceptance suite: every release criterion as one pass/fail line, covering
// the canonical operator examples, the worked arithmetic, enumeration
// oracles on micro instances, determinism, aggregation and the desk-scale
// solver trends on generated data.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <future>
#include <map>
#include <numeric>
#include <string>
#include <vector>

#include "mcga/ga.hpp"
#include "mcga/harness/experiment.hpp"
#include "mcga/hash.hpp"
#include "mcga/mall/domain.hpp"
#include "mcga/mall/generator.hpp"
#include "mcga/mall/solvers.hpp"
#include "mcga/nurse/direct.hpp"
#include "mcga/nurse/domain.hpp"
#include "mcga/nurse/generator.hpp"
#include "mcga/nurse/indirect.hpp"
#include "mcga/operators.hpp"
#include "mcga/penalty.hpp"

using namespace mcga;

namespace {

int failures = 0;
long long total_invariant_violations = 0;
long long instrumented_runs = 0;

void report(int criterion, const std::string& what, bool pass, const std::string& detail = "") {
    std::printf("[%s] criterion %2d: %s%s%s\n", pass ? "PASS" : "FAIL", criterion, what.c_str(),
                detail.empty() ? "" : " -- ", detail.c_str());
    std::fflush(stdout);
    if (!pass) ++failures;
}

ops::PermutationString one_based(std::initializer_list<int> values) {
    ops::PermutationString p(values);
    for (int& v : p) --v;
    return p;
}

// ---- criterion 1: canonical crossover examples ----

void criterion_1() {
    const auto start = std::chrono::steady_clock::now();
    bool ok = true;

    auto p9a = one_based({1, 2, 3, 4, 5, 6, 7, 8, 9});
    auto p9b = one_based({3, 4, 7, 1, 6, 8, 9, 2, 5});

    auto [ob1, ob2] = ops::order_based_crossover(p9a, p9b, 2, 7);
    ok = ok && ob1 == one_based({1, 8, 3, 4, 5, 6, 7, 9, 2});
    ok = ok && ob2 == one_based({2, 3, 7, 1, 6, 8, 9, 4, 5});

    auto [pm1, pm2] = ops::pmx_crossover(p9a, p9b, 2, 5);
    ok = ok && pm1 == one_based({4, 2, 7, 1, 6, 5, 3, 8, 9});
    ok = ok && pm2 == one_based({7, 1, 3, 4, 5, 8, 9, 2, 6});

    std::vector<std::uint8_t> tmpl{0, 0, 1, 0, 1, 1, 1, 0, 1};
    auto [ux1, ux2] = ops::pux_crossover_with_template(p9a, p9b, tmpl);
    ok = ok && ux1 == one_based({4, 1, 3, 8, 5, 6, 7, 2, 9});
    ok = ok && ux2 == one_based({3, 4, 5, 1, 6, 7, 8, 2, 9});

    auto p6a = one_based({1, 2, 3, 4, 5, 6});
    auto p6b = one_based({3, 4, 2, 1, 6, 5});
    auto [c1a, c1b] = ops::c1_crossover(p6a, p6b, 2);
    ok = ok && c1a == one_based({1, 2, 3, 4, 6, 5});
    ok = ok && c1b == one_based({3, 4, 1, 2, 5, 6});

    double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    report(1, "crossover figures reproduced exactly", ok && secs < 1.0,
           "order-based, PMX, uniform-order template, C1");
}

// ---- criterion 2: permutation validity ----

void criterion_2() {
    const auto start = std::chrono::steady_clock::now();
    Rng rng(20240042);
    int violations = 0;
    auto check = [&](const ops::PermutationString& p) {
        if (!ops::is_permutation_of_iota(p)) ++violations;
    };

    for (int trial = 0; trial < 10000; ++trial) {
        std::size_t n = 5 + rng.uniform_index(21);
        ops::PermutationString p1(n), p2(n);
        std::iota(p1.begin(), p1.end(), 0);
        std::iota(p2.begin(), p2.end(), 0);
        rng.shuffle(p1);
        rng.shuffle(p2);
        std::size_t c1 = rng.uniform_index(n);
        std::size_t c2 = c1 + 1 + rng.uniform_index(n - c1);
        auto [a1, a2] = ops::order_based_crossover(p1, p2, c1, c2);
        check(a1);
        check(a2);
        auto [b1, b2] = ops::pmx_crossover(p1, p2, c1, c2);
        check(b1);
        check(b2);
        auto [d1, d2] = ops::c1_crossover(p1, p2, 1 + rng.uniform_index(n - 1));
        check(d1);
        check(d2);
        auto [e1, e2] = ops::pux_crossover(p1, p2, 0.66, rng);
        check(e1);
        check(e2);
        check(ops::swap_mutation(p1, 0.2, rng));
        check(ops::scramble_mutation(p1, 0.8, rng));
    }
    // exhaustive cut enumeration at n <= 6
    for (std::size_t n = 2; n <= 6; ++n) {
        for (int trial = 0; trial < 60; ++trial) {
            ops::PermutationString p1(n), p2(n);
            std::iota(p1.begin(), p1.end(), 0);
            std::iota(p2.begin(), p2.end(), 0);
            rng.shuffle(p1);
            rng.shuffle(p2);
            for (std::size_t c1 = 0; c1 < n; ++c1)
                for (std::size_t c2 = c1 + 1; c2 <= n; ++c2) {
                    auto [a1, a2] = ops::order_based_crossover(p1, p2, c1, c2);
                    check(a1);
                    check(a2);
                    auto [b1, b2] = ops::pmx_crossover(p1, p2, c1, c2);
                    check(b1);
                    check(b2);
                }
            for (std::size_t cut = 1; cut < n; ++cut) {
                auto [d1, d2] = ops::c1_crossover(p1, p2, cut);
                check(d1);
                check(d2);
            }
        }
    }
    double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    report(2, "permutation validity, randomized and exhaustive", violations == 0 && secs < 30.0,
           std::to_string(violations) + " violations in " + std::to_string(secs) + "s");
}

// ---- criterion 3: penalty strategy units ----

void criterion_3() {
    bool ok = true;
    {
        penalty::State s;
        s.strategy = penalty::Strategy::FeasibleGap;
        s.params.nu = 5.0;
        s.best_feasible_objective = 30.0;
        s.best_overall_fitness = 20.0;
        ok = ok && penalty::update_weight(s) == 5.0;
        s.best_feasible_objective = 20.0;  // feasible equals overall
        ok = ok && penalty::update_weight(s) == 5.0;
    }
    {
        penalty::State s;
        s.strategy = penalty::Strategy::ViolationScaled;
        s.params.alpha = 8.0;
        s.best_violation = 3.0;
        ok = ok && penalty::update_weight(s) == 24.0;
    }
    {
        penalty::State s;
        s.strategy = penalty::Strategy::ViolationComplement;
        s.params.alpha = 10.0;
        s.best_violation = 3.0;
        ok = ok && penalty::update_weight(s) == 70.0;
    }
    {
        penalty::State s;
        s.strategy = penalty::Strategy::TwoPhase;
        s.params.high = 50.0;
        s.params.low = 5.0;
        ok = ok && penalty::update_weight(s) == 50.0;
        s.best_feasible_objective = 33.0;
        ok = ok && penalty::update_weight(s) == 5.0;
    }
    report(3, "penalty strategy unit values exact", ok,
           "gap 5, floor 5, scaled 24, complement 70, phases 50/5");
}

// ---- criterion 4: worked fitness example ----

void criterion_4() {
    nurse::NurseEval eval;
    eval.objective = 22;
    eval.violation = 3;
    bool ok = nurse::fitness_of(eval, 10.0) == 52.0;
    report(4, "worked roster fitness 22 + 3*10 = 52 exact", ok);
}

// ---- criterion 5: knapsack smoothing ladder ----

void criterion_5() {
    using namespace nurse;
    bool ok = true;
    std::string detail;

    auto day_nurse = [](int id, int days) {
        NurseSpec n;
        n.id = id;
        n.grade = 3;
        n.day_shifts = days;
        n.preference = PreferenceClass::DaysOnly;
        return n;
    };
    auto day_demand = [](int per_day) {
        Demand d{};
        for (int k = 0; k < 7; ++k) d[static_cast<std::size_t>(k)] = {0, 0, per_day};
        return d;
    };
    auto weekdays_at = [](const Demand& d, int value) {
        for (int k = 1; k <= 5; ++k)
            if (d[static_cast<std::size_t>(k)][2] != value) return false;
        return true;
    };

    std::vector<NurseSpec> nurses;
    auto with_supply = [&](std::initializer_list<int> day_contracts) {
        nurses.clear();
        int id = 0;
        for (int days : day_contracts) nurses.push_back(day_nurse(id++, days));
        return knapsack_smooth(day_demand(10), nurses);
    };

    {  // more than seven units: repeated full raise then the remainder case
        auto r = with_supply({5, 5, 5, 5, 5, 5, 5, 5, 5, 5, 5, 5, 5, 5, 5, 5, 2});
        ok = ok && r.day_overcover == 12 && r.added_nurses.empty() && weekdays_at(r.demand, 12) &&
             r.demand[0][2] == 11 && r.demand[6][2] == 11;
        if (!ok && detail.empty()) detail = "u>7 case";
    }
    {  // exactly seven: all days raised
        auto r = with_supply({5, 5, 5, 5, 5, 5, 5, 5, 5, 5, 5, 5, 5, 5, 5, 2});
        ok = ok && r.day_overcover == 7 && r.added_nurses.empty() && weekdays_at(r.demand, 11) &&
             r.demand[0][2] == 11 && r.demand[6][2] == 11;
        if (!ok && detail.empty()) detail = "u=7 case";
    }
    {  // six: all days raised plus a weekend dummy of one shift
        auto r = with_supply({5, 5, 5, 5, 5, 5, 5, 5, 5, 5, 5, 5, 5, 5, 5, 1});
        ok = ok && r.day_overcover == 6 && r.added_nurses.size() == 1 &&
             r.added_nurses[0].dummy == DummyKind::WeekendDummy &&
             r.added_nurses[0].day_shifts == 1 && weekdays_at(r.demand, 11) &&
             r.demand[0][2] == 11 && r.demand[6][2] == 11;
        if (!ok && detail.empty()) detail = "u=6 case";
    }
    {  // five: weekdays raised, nothing else (the worked example)
        auto r = with_supply({5, 5, 5, 5, 5, 5, 5, 5, 5, 5, 5, 5, 5, 5, 5});
        ok = ok && r.day_overcover == 5 && r.added_nurses.empty() && weekdays_at(r.demand, 11) &&
             r.demand[0][2] == 10 && r.demand[6][2] == 10;
        if (!ok && detail.empty()) detail = "u=5 case";
    }
    {  // below five: weekdays raised plus a weekday dummy working 5-u shifts
        auto r = with_supply({5, 5, 5, 5, 5, 5, 5, 5, 5, 5, 5, 5, 5, 5, 4});
        ok = ok && r.day_overcover == 4 && r.added_nurses.size() == 1 &&
             r.added_nurses[0].dummy == DummyKind::WeekdayDummy &&
             r.added_nurses[0].day_shifts == 1 && weekdays_at(r.demand, 11);
        if (!ok && detail.empty()) detail = "u<5 case";
    }
    {  // balanced: untouched
        auto r = with_supply({5, 5, 5, 5, 5, 5, 5, 5, 5, 5, 5, 5, 5, 5});
        ok = ok && r.day_overcover == 0 && r.added_nurses.empty() && weekdays_at(r.demand, 10);
        if (!ok && detail.empty()) detail = "balanced case";
    }
    {  // shortage: one bank nurse per missing unit, one day shift each
        auto r = with_supply({5, 5, 5, 5, 5, 5, 5, 5, 5, 5, 5, 5, 5, 2});
        ok = ok && r.day_overcover == -3 && r.added_nurses.size() == 3;
        for (const NurseSpec& bank : r.added_nurses)
            ok = ok && bank.dummy == DummyKind::Bank && bank.day_shifts == 1;
        if (!ok && detail.empty()) detail = "shortage case";
    }
    report(5, "knapsack smoothing ladder, all seven cases", ok, detail);
}

// ---- criterion 6: adjacency degrees ----

void criterion_6() {
    using namespace nurse;
    auto pattern = [](std::initializer_list<int> bits) {
        ShiftPattern p;
        std::size_t i = 0;
        for (int b : bits) p.bits[i++] = static_cast<std::uint8_t>(b);
        int dc = p.day_count(), nc = p.night_count();
        p.kind = dc > 0 && nc > 0 ? PatternKind::Combined
                                  : (nc > 0 ? PatternKind::Night : PatternKind::Day);
        return p;
    };
    auto a = pattern({1, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0});
    auto b = pattern({0, 0, 0, 1, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0});
    auto c = pattern({0, 0, 0, 0, 0, 0, 0, 0, 1, 0, 0, 1, 1, 1});
    auto d = pattern({0, 0, 0, 0, 0, 0, 0, 0, 1, 0, 1, 1, 1, 0});
    auto day5 = pattern({1, 1, 1, 1, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0});
    auto night4 = pattern({0, 0, 0, 0, 0, 0, 0, 1, 1, 1, 1, 0, 0, 0});
    bool ok = adjacency_degree(a, b) == 2 && adjacency_degree(c, d) == 1 &&
              adjacency_degree(day5, night4) == 5 && adjacency_degree(night4, day5) == 5;
    report(6, "adjacency degrees match the worked pairs and the day/night rule", ok);
}

// ---- criterion 7: mall arithmetic ----

void criterion_7() {
    const auto start = std::chrono::steady_clock::now();
    using namespace mall;
    bool ok = true;
    ok = ok && size_efficiency(2) == 11.5;
    ok = ok && size_efficiency(3) == 13.0;
    ok = ok && size_efficiency(4) == 12.25;
    ok = ok && std::abs(size_efficiency(7) - 88.0 / 7.0) < 1e-9;
    ok = ok && count_efficiency(6, 6) == 10.0;
    ok = ok && count_efficiency(7, 6) == 9.0;
    ok = ok && count_efficiency(16, 6) == 0.0;
    // worked rents: small/worst/no-group/five-under and large/prime/group/ideal
    ok = ok && size_efficiency(1) * 5.0 * 10.0 * count_efficiency(1, 6) == 2500.0;
    ok = ok && size_efficiency(3) * 25.0 * 12.0 * count_efficiency(3, 3) == 39000.0;
    // the prose's 14850 uses a size factor of 11 against its own table; the
    // table-consistent value is asserted instead
    ok = ok && size_efficiency(2) * 15.0 * 10.0 * count_efficiency(6, 5) == 15525.0;
    MallInstance hundred;
    hundred.locations = 100;
    ok = ok && upper_bound(hundred) == 2640000.0;
    double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    report(7, "mall efficiency factors, worked rents, upper bound", ok && secs < 1.0,
           "15525 asserted for the prose/table discrepancy");
}

// ---- criterion 8: nurse enumeration oracle ----

double enumerate_nurse_optimum(const nurse::NurseInstance& inst) {
    double best = -1.0;
    std::vector<std::size_t> idx(inst.nurse_count(), 0);
    while (true) {
        nurse::Roster r(inst.nurse_count());
        for (std::size_t i = 0; i < r.size(); ++i) r[i] = inst.feasible[i][idx[i]];
        nurse::NurseEval eval = nurse::evaluate(r, inst);
        if (eval.feasible && (best < 0 || eval.objective < best)) best = eval.objective;
        std::size_t digit = 0;
        while (digit < idx.size()) {
            if (++idx[digit] < inst.feasible[digit].size()) break;
            idx[digit++] = 0;
        }
        if (digit == idx.size()) break;
    }
    return best;
}

void criterion_8() {
    const auto start = std::chrono::steady_clock::now();
    bool ok = true;
    std::string detail;
    int coevo_total = 0, indirect_total = 0;

    for (int i = 0; i < 10; ++i) {
        nurse::NurseInstance inst = nurse::generate_micro_instance(hash_combine_u64(100, i));
        double optimum = enumerate_nurse_optimum(inst);
        if (optimum < 0) {
            ok = false;
            detail = "micro instance without feasible roster";
            break;
        }
        int coevo_hits = 0, indirect_hits = 0;
        for (int run = 0; run < 20; ++run) {
            std::uint64_t seed = hash_combine_u64(static_cast<std::uint64_t>(i * 100 + run), 7);
            nurse::DirectNurseOptions direct;
            direct.algo = nurse::NurseAlgo::CoevoRepair;
            SolveOutcome oc = nurse::solve_nurse_direct(inst, direct, seed);
            total_invariant_violations += oc.invariant_violations;
            ++instrumented_runs;
            if (oc.found_feasible && oc.best_objective == optimum) ++coevo_hits;

            nurse::IndirectNurseOptions indirect;
            indirect.adaptive = true;  // self-adjusting decoder weights
            SolveOutcome oi = nurse::solve_nurse_indirect(inst, indirect, seed);
            total_invariant_violations += oi.invariant_violations;
            ++instrumented_runs;
            if (oi.found_feasible && oi.best_objective == optimum) ++indirect_hits;
        }
        coevo_total += coevo_hits;
        indirect_total += indirect_hits;
        if (coevo_hits < 18 || indirect_hits < 18) {
            ok = false;
            detail = "instance " + std::to_string(i) + ": coevo " + std::to_string(coevo_hits) +
                     "/20, indirect " + std::to_string(indirect_hits) + "/20";
        }
    }
    double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (detail.empty())
        detail = "coevo " + std::to_string(coevo_total) + "/200, indirect " +
                 std::to_string(indirect_total) + "/200, " + std::to_string(secs) + "s";
    report(8, "nurse micro instances solved to the enumerated optimum", ok && secs < 120.0,
           detail);
}

// ---- criterion 9: mall enumeration oracle ----

void criterion_9() {
    const auto start = std::chrono::steady_clock::now();
    bool ok = true;
    std::string detail;
    int direct_total = 0, indirect_total = 0;

    for (int i = 0; i < 5; ++i) {
        mall::MallInstance inst = mall::generate_micro_mall_instance(hash_combine_u64(55, i));
        double optimum = -1.0;
        mall::Layout layout(8, 0);
        for (int code = 0; code < 6561; ++code) {
            int c = code;
            for (std::size_t p = 0; p < 8; ++p) {
                layout[p] = c % 3;
                c /= 3;
            }
            mall::MallEval eval = mall::evaluate_layout(layout, inst);
            if (eval.feasible) optimum = std::max(optimum, eval.rent);
        }
        if (optimum < 0) {
            ok = false;
            detail = "micro mall instance without feasible layout";
            break;
        }
        int direct_hits = 0, indirect_hits = 0;
        for (int run = 0; run < 20; ++run) {
            std::uint64_t seed = hash_combine_u64(static_cast<std::uint64_t>(i * 31 + run), 3);
            mall::MallOptions direct;
            direct.algo = mall::MallAlgo::Direct;
            SolveOutcome od = mall::solve_mall(inst, direct, seed);
            total_invariant_violations += od.invariant_violations;
            ++instrumented_runs;
            if (od.found_feasible && std::abs(od.best_objective - optimum) < 1e-6) ++direct_hits;

            mall::MallOptions indirect;
            indirect.algo = mall::MallAlgo::Indirect;
            indirect.weights = mall::MallWeightPreset::Auto;
            SolveOutcome oi = mall::solve_mall(inst, indirect, seed);
            total_invariant_violations += oi.invariant_violations;
            ++instrumented_runs;
            if (oi.found_feasible && std::abs(oi.best_objective - optimum) < 1e-6)
                ++indirect_hits;
        }
        direct_total += direct_hits;
        indirect_total += indirect_hits;
        if (direct_hits < 18 || indirect_hits < 18) {
            ok = false;
            detail = "instance " + std::to_string(i) + ": direct " + std::to_string(direct_hits) +
                     "/20, indirect " + std::to_string(indirect_hits) + "/20";
        }
    }
    double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (detail.empty())
        detail = "direct " + std::to_string(direct_total) + "/100, indirect " +
                 std::to_string(indirect_total) + "/100, " + std::to_string(secs) + "s";
    report(9, "mall micro instances solved to the enumerated optimum", ok && secs < 120.0,
           detail);
}

// ---- criterion 10: decoder determinism ----

void criterion_10() {
    bool ok = true;
    {
        nurse::GenSpec spec;
        spec.nurse_count = 25;
        nurse::NurseInstance inst = nurse::generate_nurse_instance(spec, 20241010);
        Rng order_rng(99);
        nurse::SearchOrders orders =
            nurse::make_search_orders(nurse::SearchOrderKind::Biased, inst, order_rng);
        nurse::DecoderWeights weights;
        Rng rng(7);
        for (int trial = 0; trial < 100; ++trial) {
            ops::PermutationString perm(inst.nurse_count());
            std::iota(perm.begin(), perm.end(), 0);
            rng.shuffle(perm);
            std::uint64_t h = fnv1a_ints(nurse::decode_combined(perm, inst, weights, orders));
            for (int repeat = 0; repeat < 2; ++repeat)
                ok = ok &&
                     fnv1a_ints(nurse::decode_combined(perm, inst, weights, orders)) == h;
        }
    }
    {
        mall::MallInstance inst = mall::generate_mall_instance(4, 20241010);
        mall::MallDecoderWeights weights = mall::weight_preset(mall::MallWeightPreset::Medium);
        Rng rng(8);
        for (int trial = 0; trial < 100; ++trial) {
            ops::PermutationString perm(static_cast<std::size_t>(inst.locations));
            std::iota(perm.begin(), perm.end(), 0);
            rng.shuffle(perm);
            std::uint64_t h = fnv1a_ints(mall::decode_mall(perm, inst, weights));
            for (int repeat = 0; repeat < 2; ++repeat)
                ok = ok && fnv1a_ints(mall::decode_mall(perm, inst, weights)) == h;
        }
    }
    report(10, "decoder determinism, 100/100 hash-identical per problem", ok);
}

// ---- criterion 11: aggregation worked example ----

void criterion_11() {
    using harness::RunRecord;
    std::vector<RunRecord> records;
    for (int i = 0; i < 50; ++i) {
        RunRecord rec;
        rec.instance = "solved-" + std::to_string(i);
        rec.best_objective = 20.0;
        rec.feasible = true;
        records.push_back(rec);
    }
    for (int i = 0; i < 2; ++i) {
        RunRecord rec;
        rec.instance = "unsolved-" + std::to_string(i);
        rec.feasible = false;
        records.push_back(rec);
    }
    harness::AggregateStats nurse_stats = harness::aggregate(records, false, 100.0);
    bool ok = nurse_stats.cost_or_rent == 24.0;

    std::vector<RunRecord> mall_records;
    RunRecord solved;
    solved.instance = "a";
    solved.best_objective = 700.0;
    solved.feasible = true;
    mall_records.push_back(solved);
    RunRecord unsolved;
    unsolved.instance = "b";
    unsolved.feasible = false;
    mall_records.push_back(unsolved);
    harness::AggregateStats mall_stats = harness::aggregate(mall_records, true, 0.0);
    ok = ok && mall_stats.cost_or_rent == 700.0;  // (700 + 0) / 1 solved
    report(11, "censored aggregation reproduces (20*50 + 2*100)/50 = 24", ok,
           "mall censor substitutes 0");
}

// ---- criterion 12: desk-scale trend replication ----

struct TrendStats {
    double feasibility = 0.0;
    double censored = 0.0;
    long long invariant_violations = 0;
    long long runs = 0;
};

template <typename Instance, typename Solver>
TrendStats run_trend(const std::vector<Instance>& instances, Solver&& solve, bool maximize,
                     double censor) {
    std::vector<std::future<std::vector<SolveOutcome>>> futures;
    for (const Instance& inst : instances)
        futures.push_back(std::async(std::launch::async, [&solve, &inst] {
            std::vector<SolveOutcome> outs;
            for (int run = 0; run < 20; ++run)
                outs.push_back(solve(inst, harness::derive_seed(9000, inst.name, run)));
            return outs;
        }));

    TrendStats stats;
    double numerator = 0.0;
    int solved = 0;
    int feasible_runs = 0;
    for (auto& fut : futures) {
        std::vector<SolveOutcome> outs = fut.get();
        bool any = false;
        double best = 0.0;
        for (const SolveOutcome& out : outs) {
            stats.invariant_violations += out.invariant_violations;
            ++stats.runs;
            if (!out.found_feasible) continue;
            ++feasible_runs;
            if (!any || (maximize ? out.best_objective > best : out.best_objective < best))
                best = out.best_objective;
            any = true;
        }
        if (any) {
            numerator += best;
            ++solved;
        } else {
            numerator += censor;
        }
    }
    stats.feasibility = static_cast<double>(feasible_runs) / static_cast<double>(stats.runs);
    stats.censored = solved > 0 ? numerator / solved : censor;
    return stats;
}

void criterion_12() {
    const auto start = std::chrono::steady_clock::now();

    // (a) + (b): ten files per mall set 4 and 5
    std::vector<mall::MallInstance> mall_files;
    for (int i = 0; i < 10; ++i)
        mall_files.push_back(mall::generate_mall_instance(4, hash_combine_u64(42, i)));
    for (int i = 0; i < 10; ++i)
        mall_files.push_back(mall::generate_mall_instance(5, hash_combine_u64(43, i)));

    TrendStats direct = run_trend(
        mall_files,
        [](const mall::MallInstance& inst, std::uint64_t seed) {
            mall::MallOptions opt;  // tuned: longer stagnation window
            opt.algo = mall::MallAlgo::Direct;
            opt.ga.stop_stagnation = 100;
            return mall::solve_mall(inst, opt, seed);
        },
        true, 0.0);
    total_invariant_violations += direct.invariant_violations;
    instrumented_runs += direct.runs;
    double secs_a =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    report(12, "(a) tuned direct mall GA feasibility >= 0.85 on sets 4 and 5",
           direct.feasibility >= 0.85 && secs_a < 900.0,
           "feasibility " + std::to_string(direct.feasibility) + ", " + std::to_string(secs_a) +
               "s");

    const auto start_b = std::chrono::steady_clock::now();
    TrendStats indirect = run_trend(
        mall_files,
        [](const mall::MallInstance& inst, std::uint64_t seed) {
            mall::MallOptions opt;
            opt.algo = mall::MallAlgo::Indirect;
            opt.weights = mall::MallWeightPreset::Auto;
            opt.ga.stop_stagnation = 60;
            return mall::solve_mall(inst, opt, seed);
        },
        true, 0.0);
    total_invariant_violations += indirect.invariant_violations;
    instrumented_runs += indirect.runs;
    double secs_b =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start_b).count();
    report(12, "(b) auto-weight indirect mall GA feasibility >= 0.95 on the same files",
           indirect.feasibility >= 0.95 && secs_b < 900.0,
           "feasibility " + std::to_string(indirect.feasibility) + ", " + std::to_string(secs_b) +
               "s");

    // (c): random-cost nurse files, censored cost ordering
    const auto start_c = std::chrono::steady_clock::now();
    std::vector<nurse::NurseInstance> nurse_files;
    nurse::GenSpec spec;
    spec.variant = nurse::CostVariant::RandomCost;
    spec.nurse_count = 25;
    for (int i = 0; i < 10; ++i) {
        spec.name = "trend-random-" + std::to_string(i);
        nurse_files.push_back(nurse::generate_nurse_instance(spec, hash_combine_u64(1234, i)));
    }
    TrendStats nurse_indirect = run_trend(
        nurse_files,
        [](const nurse::NurseInstance& inst, std::uint64_t seed) {
            nurse::IndirectNurseOptions opt;
            return nurse::solve_nurse_indirect(inst, opt, seed);
        },
        false, 100.0);
    TrendStats nurse_direct = run_trend(
        nurse_files,
        [](const nurse::NurseInstance& inst, std::uint64_t seed) {
            nurse::DirectNurseOptions opt;
            opt.algo = nurse::NurseAlgo::CoevoRepair;
            return nurse::solve_nurse_direct(inst, opt, seed);
        },
        false, 100.0);
    total_invariant_violations +=
        nurse_indirect.invariant_violations + nurse_direct.invariant_violations;
    instrumented_runs += nurse_indirect.runs + nurse_direct.runs;
    double secs_c =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start_c).count();
    bool ordering = nurse_indirect.censored <= 1.05 * nurse_direct.censored;
    report(12, "(c) indirect nurse GA censored cost <= direct GA on random-cost files",
           ordering && secs_c < 900.0,
           "indirect " + std::to_string(nurse_indirect.censored) + " vs direct " +
               std::to_string(nurse_direct.censored) + " (5% slack), " + std::to_string(secs_c) +
               "s");
}

// ---- criterion 13: instrumented invariants ----

void criterion_13() {
    report(13, "elitist monotonicity and size conservation over every acceptance run",
           total_invariant_violations == 0 && instrumented_runs > 0,
           std::to_string(total_invariant_violations) + " violations over " +
               std::to_string(instrumented_runs) + " instrumented runs");
}

}  // namespace

int main() {
    criterion_1();
    criterion_2();
    criterion_3();
    criterion_4();
    criterion_5();
    criterion_6();
    criterion_7();
    criterion_8();
    criterion_9();
    criterion_10();
    criterion_11();
    criterion_12();
    criterion_13();
    std::printf("%d criterion check(s) failed\n", failures);
    return failures == 0 ? 0 : 1;
}
