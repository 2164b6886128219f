#include <doctest.h>

#include <stdexcept>

#include "mcga/penalty.hpp"

using namespace mcga::penalty;

TEST_CASE("fixed strategy returns the configured weight") {
    State s;
    s.strategy = Strategy::Fixed;
    s.params.fixed_w = 20.0;
    CHECK(update_weight(s) == doctest::Approx(20.0));
}

TEST_CASE("feasible-gap weight is half the gap") {
    State s;
    s.strategy = Strategy::FeasibleGap;
    s.params.nu = 5.0;
    s.best_feasible_objective = 30.0;
    s.best_overall_fitness = 20.0;
    CHECK(update_weight(s) == doctest::Approx(5.0));

    SUBCASE("no feasible solution yet falls back to nu") {
        State fresh;
        fresh.strategy = Strategy::FeasibleGap;
        fresh.params.nu = 5.0;
        fresh.best_overall_fitness = 20.0;
        CHECK(update_weight(fresh) == doctest::Approx(5.0));
    }
    SUBCASE("feasible equals overall falls back to nu") {
        s.best_feasible_objective = 20.0;
        CHECK(update_weight(s) == doctest::Approx(5.0));
    }
    SUBCASE("weight edges up as the overall best improves, drops on a new feasible") {
        s.best_feasible_objective = 30.0;
        s.best_overall_fitness = 20.0;
        double w1 = update_weight(s);
        s.best_overall_fitness = 18.0;  // improved overall best, same feasible
        double w2 = update_weight(s);
        CHECK(w2 > w1);
        s.best_feasible_objective = 22.0;  // new better feasible narrows the gap
        double w3 = update_weight(s);
        CHECK(w3 < w2);
    }
}

TEST_CASE("violation-scaled weight") {
    State s;
    s.strategy = Strategy::ViolationScaled;
    s.params.alpha = 8.0;
    s.best_violation = 3.0;
    CHECK(update_weight(s) == doctest::Approx(24.0));
    s.best_violation = 0.0;
    CHECK(update_weight(s) == doctest::Approx(4.0));  // alpha / 2 floor
}

TEST_CASE("violation-complement weight") {
    State s;
    s.strategy = Strategy::ViolationComplement;
    s.params.alpha = 10.0;
    s.best_violation = 3.0;
    CHECK(update_weight(s) == doctest::Approx(70.0));
    s.best_violation = 10.0;  // complement reaches zero -> floor
    CHECK(update_weight(s) == doctest::Approx(5.0));
    s.best_violation = 15.0;  // clamped below zero -> floor
    CHECK(update_weight(s) == doctest::Approx(5.0));
}

TEST_CASE("two-phase weight switches on the first feasible solution") {
    State s;
    s.strategy = Strategy::TwoPhase;
    s.params.high = 50.0;
    s.params.low = 5.0;
    CHECK(update_weight(s) == doctest::Approx(50.0));
    s.best_feasible_objective = 40.0;
    CHECK(update_weight(s) == doctest::Approx(5.0));
}

TEST_CASE("weights never reach zero") {
    for (Strategy strategy : {Strategy::Fixed, Strategy::FeasibleGap, Strategy::ViolationScaled,
                              Strategy::ViolationComplement, Strategy::TwoPhase}) {
        State s;
        s.strategy = strategy;
        s.best_violation = 0.0;
        s.best_overall_fitness = 10.0;
        s.best_feasible_objective = 10.0;
        CHECK(update_weight(s) > 0.0);
    }
}

TEST_CASE("strategy names round-trip") {
    for (Strategy strategy : {Strategy::Fixed, Strategy::FeasibleGap, Strategy::ViolationScaled,
                              Strategy::ViolationComplement, Strategy::TwoPhase})
        CHECK(strategy_from_name(strategy_name(strategy)) == strategy);
    CHECK_THROWS_AS(strategy_from_name("bogus"), std::invalid_argument);
}
