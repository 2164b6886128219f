#include <doctest.h>

#include <stdexcept>

#include <numeric>

#include "mcga/nurse/direct.hpp"
#include "mcga/nurse/domain.hpp"
#include "mcga/nurse/generator.hpp"

using namespace mcga;
using namespace mcga::nurse;

namespace {

NurseSpec day_nurse(int id, int grade, int days) {
    NurseSpec n;
    n.id = id;
    n.grade = grade;
    n.day_shifts = days;
    n.preference = PreferenceClass::DaysOnly;
    return n;
}

NurseInstance build(std::vector<NurseSpec> nurses, Demand demand) {
    NurseInstance inst;
    inst.name = "direct-test";
    inst.nurses = std::move(nurses);
    inst.demand = demand;
    build_pattern_table(inst);
    build_all_costs(inst);
    inst.finalize();
    return inst;
}

int pattern_with_bits(const NurseInstance& inst, std::size_t nurse,
                      std::initializer_list<int> days) {
    std::array<std::uint8_t, kShiftCount> want{};
    std::size_t i = 0;
    for (int b : days) want[i++] = static_cast<std::uint8_t>(b);
    for (int pid : inst.feasible[nurse])
        if (inst.patterns[static_cast<std::size_t>(pid)].bits == want) return pid;
    return -1;
}

}  // namespace

TEST_CASE("chain swap reduces cost for identical nurses and respects grades") {
    // two identical nurses with crossed preferences
    NurseSpec a = day_nurse(0, 2, 2);
    a.requests.push_back({0, 2});  // dislikes Sunday
    NurseSpec b = day_nurse(1, 2, 2);
    b.requests.push_back({3, 2});  // dislikes Wednesday
    Demand demand{};
    auto inst = build({a, b}, demand);

    int sun_mon = pattern_with_bits(inst, 0, {1, 1, 0, 0, 0, 0, 0});
    int wed_thu = pattern_with_bits(inst, 0, {0, 0, 0, 1, 1, 0, 0});
    REQUIRE(sun_mon >= 0);
    REQUIRE(wed_thu >= 0);

    // a on her disliked Sunday pattern, b on her disliked Wednesday pattern
    Roster bad{sun_mon, wed_thu};
    int before = inst.cost_of(0, bad[0]) + inst.cost_of(1, bad[1]);
    Roster swapped = chain_swap(bad, inst);
    int after = inst.cost_of(0, swapped[0]) + inst.cost_of(1, swapped[1]);
    CHECK(after < before);
    // the swap exchanged the patterns
    CHECK(swapped[0] == wed_thu);
    CHECK(swapped[1] == sun_mon);
    // cover unchanged
    CHECK(compute_cover(bad, inst).provided == compute_cover(swapped, inst).provided);

    SUBCASE("already optimal rosters stay unchanged") {
        CHECK(chain_swap(swapped, inst) == swapped);
    }
    SUBCASE("different grades never swap") {
        NurseSpec c = day_nurse(0, 1, 2);
        c.requests.push_back({0, 2});
        NurseSpec d = day_nurse(1, 2, 2);
        d.requests.push_back({3, 2});
        auto mixed = build({c, d}, demand);
        Roster worse{pattern_with_bits(mixed, 0, {1, 1, 0, 0, 0, 0, 0}),
                     pattern_with_bits(mixed, 1, {0, 0, 0, 1, 1, 0, 0})};
        CHECK(chain_swap(worse, mixed) == worse);
    }
}

TEST_CASE("chain swap finds three-way cycles") {
    // three identical nurses, each hating her own pattern and liking the next
    std::vector<NurseSpec> nurses;
    for (int i = 0; i < 3; ++i) {
        NurseSpec n = day_nurse(i, 3, 1);
        n.requests.push_back({2 * i, 3});  // nurse i dislikes day 2i
        nurses.push_back(n);
    }
    auto inst = build(std::move(nurses), Demand{});
    Roster bad(3);
    for (std::size_t i = 0; i < 3; ++i) {
        std::array<int, 7> bits{};
        bits[2 * i] = 1;
        bad[i] = pattern_with_bits(inst, i, {bits[0], bits[1], bits[2], bits[3], bits[4], bits[5], bits[6]});
        REQUIRE(bad[i] >= 0);
    }
    Roster fixed = chain_swap(bad, inst);
    int before = 0, after = 0;
    for (std::size_t i = 0; i < 3; ++i) {
        before += inst.cost_of(i, bad[i]);
        after += inst.cost_of(i, fixed[i]);
    }
    CHECK(after < before);
}

TEST_CASE("special swap moves the flexible nurse onto nights") {
    // nurse a works 2 days or 2 nights; nurse b works 2 days or 1 night
    NurseSpec a;
    a.id = 0;
    a.grade = 3;
    a.day_shifts = 2;
    a.night_shifts = 2;
    NurseSpec b;
    b.id = 1;
    b.grade = 3;
    b.day_shifts = 2;
    b.night_shifts = 1;
    // demand: 2 day shifts and 2 nights in total
    Demand demand{};
    demand[0] = {0, 0, 1};
    demand[1] = {0, 0, 1};
    demand[7] = {0, 0, 1};
    demand[8] = {0, 0, 1};
    auto inst = build({a, b}, demand);

    int a_days = pattern_with_bits(inst, 0, {1, 1, 0, 0, 0, 0, 0});
    int b_night = -1;
    for (int pid : inst.feasible[1]) {
        const ShiftPattern& p = inst.patterns[static_cast<std::size_t>(pid)];
        if (p.kind == PatternKind::Night && p.works(7)) b_night = pid;
    }
    REQUIRE(a_days >= 0);
    REQUIRE(b_night >= 0);

    Roster bad{a_days, b_night};  // supply 3 against demand 4: one short
    NurseEval before = evaluate(bad, inst);
    CHECK(before.violation >= 1);

    Rng rng(3);
    Roster fixed = special_swap(bad, inst, rng);
    REQUIRE(fixed != bad);
    const ShiftPattern& pa = inst.patterns[static_cast<std::size_t>(fixed[0])];
    const ShiftPattern& pb = inst.patterns[static_cast<std::size_t>(fixed[1])];
    CHECK(pa.kind == PatternKind::Night);
    CHECK(pb.kind == PatternKind::Day);
    // night supply went up by one, day count supply unchanged
    CHECK(pa.night_count() == 2);
    CHECK(pb.day_count() == 2);
    // it ignores the p values entirely; only the mismatch matters
    SUBCASE("no mismatch leaves the roster alone") {
        Roster good{fixed[0], fixed[1]};
        CHECK(special_swap(good, inst, rng) == good);
    }
}

TEST_CASE("adjacent swap moves a nurse from surplus onto shortage") {
    // two one-day nurses, demand one on Sunday and one on Monday
    auto inst = build({day_nurse(0, 3, 1), day_nurse(1, 3, 1)}, Demand{});
    NurseInstance tight = inst;
    tight.demand[0] = {0, 0, 1};
    tight.demand[1] = {0, 0, 1};

    int sun0 = pattern_with_bits(tight, 0, {1, 0, 0, 0, 0, 0, 0});
    int sun1 = pattern_with_bits(tight, 1, {1, 0, 0, 0, 0, 0, 0});
    REQUIRE(sun0 >= 0);
    REQUIRE(sun1 >= 0);

    Roster both_sunday{sun0, sun1};  // Sunday surplus, Monday shortage
    Roster moved = adjacent_swap(both_sunday, tight);
    NurseEval before = evaluate(both_sunday, tight);
    NurseEval after = evaluate(moved, tight);
    CHECK(after.violation < before.violation);
    CHECK(after.violation == 0);

    SUBCASE("no surplus or shortage leaves the roster alone") {
        CHECK(adjacent_swap(moved, tight) == moved);
    }
    SUBCASE("violation never increases over random rosters") {
        GenSpec spec;
        spec.nurse_count = 15;
        auto gen = generate_nurse_instance(spec, 53);
        Rng rng(4);
        for (int trial = 0; trial < 200; ++trial) {
            Roster r(gen.nurse_count());
            for (std::size_t i = 0; i < r.size(); ++i)
                r[i] = gen.feasible[i][rng.uniform_index(gen.feasible[i].size())];
            int v_before = evaluate(r, gen).violation;
            int v_after = evaluate(adjacent_swap(r, gen), gen).violation;
            CHECK(v_after <= v_before);
        }
    }
}

TEST_CASE("hill climb repair never worsens and fixes one-move problems") {
    auto inst = build({day_nurse(0, 3, 1), day_nurse(1, 3, 1)}, Demand{});
    inst.demand[0] = {0, 0, 1};
    inst.demand[1] = {0, 0, 1};

    int sun0 = pattern_with_bits(inst, 0, {1, 0, 0, 0, 0, 0, 0});
    int sun1 = pattern_with_bits(inst, 1, {1, 0, 0, 0, 0, 0, 0});
    Roster both{sun0, sun1};
    Roster repaired = hill_climb_repair(both, inst, 20.0);
    NurseEval eval = evaluate(repaired, inst);
    CHECK(eval.feasible);

    SUBCASE("fitness never worsens over random rosters") {
        GenSpec spec;
        spec.nurse_count = 12;
        auto gen = generate_nurse_instance(spec, 59);
        Rng rng(5);
        for (int trial = 0; trial < 50; ++trial) {
            Roster r(gen.nurse_count());
            for (std::size_t i = 0; i < r.size(); ++i)
                r[i] = gen.feasible[i][rng.uniform_index(gen.feasible[i].size())];
            double before = fitness_of(evaluate(r, gen), 20.0);
            double after = fitness_of(evaluate(hill_climb_repair(r, gen, 20.0), gen), 20.0);
            CHECK(after <= before + 1e-9);
        }
    }
    SUBCASE("an already-optimal roster is unchanged") {
        CHECK(hill_climb_repair(repaired, inst, 20.0) == repaired);
    }
}

TEST_CASE("delta restart copies the best and draws neighbours") {
    GenSpec spec;
    spec.nurse_count = 10;
    auto inst = generate_nurse_instance(spec, 61);
    Rng rng(6);
    Roster best(inst.nurse_count());
    for (std::size_t i = 0; i < best.size(); ++i)
        best[i] = inst.feasible[i][rng.uniform_index(inst.feasible[i].size())];

    SUBCASE("probability zero clones the best everywhere") {
        auto pop = delta_restart(best, 3, 0.0, inst, 20, rng);
        REQUIRE(pop.size() == 20);
        for (const Roster& r : pop) CHECK(r == best);
    }
    SUBCASE("probability one draws each gene from the level neighbourhood") {
        auto pop = delta_restart(best, 2, 1.0, inst, 50, rng);
        for (const Roster& r : pop)
            for (std::size_t i = 0; i < r.size(); ++i) {
                if (r[i] == best[i]) continue;  // full-set fallback can redraw it
                const ShiftPattern& p = inst.patterns[static_cast<std::size_t>(r[i])];
                const ShiftPattern& q = inst.patterns[static_cast<std::size_t>(best[i])];
                if (p.kind == q.kind && p.day_count() == q.day_count() &&
                    p.night_count() == q.night_count())
                    CHECK(adjacency_degree(q, p) <= 2);
            }
    }
    SUBCASE("level bounds are validated") {
        CHECK_THROWS_AS(delta_restart(best, 0, 0.5, inst, 5, rng), std::invalid_argument);
    }
}

TEST_CASE("population conservation across the co-evolutionary generations") {
    GenSpec spec;
    spec.nurse_count = 12;
    auto inst = generate_nurse_instance(spec, 67);
    DirectNurseOptions opt;
    opt.algo = NurseAlgo::Coevo;
    opt.ga.population_size = 80;  // 8 sub-populations of 8 plus main of 24
    opt.ga.stop_stagnation = 6;
    auto result = solve_nurse_direct(inst, opt, 9);
    CHECK(result.invariant_violations == 0);
    CHECK(result.generations >= 6);

    SUBCASE("same seed reproduces the run") {
        auto again = solve_nurse_direct(inst, opt, 9);
        CHECK(again.best_fitness == result.best_fitness);
        CHECK(again.best_objective == result.best_objective);
        CHECK(again.initial_population_hash == result.initial_population_hash);
    }
}

TEST_CASE("repair variant and migration modes run clean") {
    GenSpec spec;
    spec.nurse_count = 10;
    auto inst = generate_nurse_instance(spec, 71);
    DirectNurseOptions opt;
    opt.algo = NurseAlgo::CoevoRepair;
    opt.ga.population_size = 64;
    opt.ga.stop_stagnation = 5;
    opt.migration = MigrationMode::BestKEvery;
    auto result = solve_nurse_direct(inst, opt, 11);
    CHECK(result.invariant_violations == 0);

    opt.algo = NurseAlgo::Delta;
    opt.migration = MigrationMode::RandomPerIndividual;
    auto delta = solve_nurse_direct(inst, opt, 11);
    CHECK(delta.invariant_violations == 0);
}

TEST_CASE("plain direct GA solves a micro instance to the enumerated optimum") {
    auto inst = generate_micro_instance(5);
    // exhaustive optimum
    double best = -1.0;
    std::vector<std::size_t> idx(inst.nurse_count(), 0);
    while (true) {
        Roster r(inst.nurse_count());
        for (std::size_t i = 0; i < r.size(); ++i) r[i] = inst.feasible[i][idx[i]];
        NurseEval eval = evaluate(r, inst);
        if (eval.feasible && (best < 0 || eval.objective < best)) best = eval.objective;
        std::size_t digit = 0;
        while (digit < idx.size()) {
            if (++idx[digit] < inst.feasible[digit].size()) break;
            idx[digit++] = 0;
        }
        if (digit == idx.size()) break;
    }
    REQUIRE(best >= 0.0);

    DirectNurseOptions opt;
    opt.ga.population_size = 200;
    opt.ga.stop_stagnation = 15;
    auto result = solve_nurse_direct(inst, opt, 3);
    REQUIRE(result.found_feasible);
    CHECK(result.best_objective == doctest::Approx(best));
}
