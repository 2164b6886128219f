#include <doctest.h>

#include <stdexcept>

#include <algorithm>
#include <numeric>
#include <set>

#include "mcga/operators.hpp"

using namespace mcga;
using namespace mcga::ops;

namespace {

PermutationString perm(std::initializer_list<int> values) { return PermutationString(values); }

// the canonical crossover examples use values 1..9; ours are 0-based
PermutationString from_one_based(std::initializer_list<int> values) {
    PermutationString p(values);
    for (int& v : p) --v;
    return p;
}

}  // namespace

TEST_CASE("k-point crossover alternates parent segments") {
    Rng rng(7);
    ValueString p1{1, 2, 3, 4}, p2{5, 6, 7, 8};
    // one point: children swap tails at the cut
    for (int trial = 0; trial < 50; ++trial) {
        auto [c1, c2] = kpoint_crossover(p1, p2, 1, rng);
        REQUIRE(c1.size() == 4);
        bool found_cut = false;
        for (std::size_t cut = 1; cut < 4; ++cut) {
            ValueString expect1 = p1, expect2 = p2;
            for (std::size_t i = cut; i < 4; ++i) {
                expect1[i] = p2[i];
                expect2[i] = p1[i];
            }
            if (c1 == expect1 && c2 == expect2) found_cut = true;
        }
        CHECK(found_cut);
    }
    // cut after index 1 specifically
    Rng fixed(3);
    bool seen = false;
    for (int trial = 0; trial < 200 && !seen; ++trial) {
        auto [c1, c2] = kpoint_crossover(p1, p2, 1, fixed);
        seen = c1 == ValueString{1, 6, 7, 8} && c2 == ValueString{5, 2, 3, 4};
    }
    CHECK(seen);
}

TEST_CASE("k-point crossover with identical parents clones") {
    Rng rng(1);
    ValueString p{3, 1, 4, 1, 5};
    for (int k = 1; k <= 4; ++k) {
        auto [c1, c2] = kpoint_crossover(p, p, k, rng);
        CHECK(c1 == p);
        CHECK(c2 == p);
    }
    CHECK_THROWS_AS(kpoint_crossover(p, p, 5, rng), std::invalid_argument);
}

TEST_CASE("k-point children take every gene from a same-position parent") {
    Rng rng(11);
    for (int trial = 0; trial < 10000; ++trial) {
        ValueString p1(8), p2(8);
        for (std::size_t i = 0; i < 8; ++i) {
            p1[i] = static_cast<int>(rng.uniform_int(0, 9));
            p2[i] = static_cast<int>(rng.uniform_int(0, 9));
        }
        int k = static_cast<int>(rng.uniform_int(1, 7));
        auto [c1, c2] = kpoint_crossover(p1, p2, k, rng);
        for (std::size_t i = 0; i < 8; ++i) {
            CHECK((c1[i] == p1[i] || c1[i] == p2[i]));
            CHECK((c2[i] == p1[i] || c2[i] == p2[i]));
        }
    }
}

TEST_CASE("parameterised uniform crossover respects the bias") {
    Rng rng(5);
    ValueString a(1000, 1), b(1000, 2), c(1000, 3), d(1000, 4);

    SUBCASE("p = 1 clones the first parent") {
        std::vector<const ValueString*> parents{&a, &b};
        CHECK(param_uniform_crossover(parents, 1.0, rng) == a);
    }
    SUBCASE("p outside [0.5, 1] rejected") {
        std::vector<const ValueString*> parents{&a, &b};
        CHECK_THROWS_AS(param_uniform_crossover(parents, 0.4, rng), std::invalid_argument);
        CHECK_THROWS_AS(param_uniform_crossover(parents, 1.1, rng), std::invalid_argument);
    }
    SUBCASE("p = 0.8 with four parents: first-parent share close to 0.8") {
        std::vector<const ValueString*> parents{&a, &b, &c, &d};
        int from_first = 0, total = 0;
        for (int trial = 0; trial < 30; ++trial) {
            ValueString child = param_uniform_crossover(parents, 0.8, rng);
            for (int gene : child) {
                from_first += gene == 1 ? 1 : 0;
                ++total;
            }
        }
        double share = static_cast<double>(from_first) / total;
        CHECK(share > 0.77);
        CHECK(share < 0.83);
    }
    SUBCASE("p = 0.5, two parents: per-gene source is a fair coin") {
        std::vector<const ValueString*> parents{&a, &b};
        int from_first = 0, total = 0;
        for (int trial = 0; trial < 30; ++trial) {
            ValueString child = param_uniform_crossover(parents, 0.5, rng);
            for (int gene : child) {
                from_first += gene == 1 ? 1 : 0;
                ++total;
            }
        }
        double share = static_cast<double>(from_first) / total;
        CHECK(share > 0.46);
        CHECK(share < 0.54);
    }
}

TEST_CASE("fixed point crossover assembles segments exactly") {
    ValueString a{1, 1, 1, 1, 1, 1}, b{2, 2, 2, 2, 2, 2};
    SUBCASE("two segments") {
        std::vector<SegmentPart> parts{{&a, 0, 2}, {&b, 2, 6}};
        CHECK(fixed_point_crossover(parts) == ValueString{1, 1, 2, 2, 2, 2});
    }
    SUBCASE("single source clones") {
        std::vector<SegmentPart> parts{{&a, 0, 6}};
        CHECK(fixed_point_crossover(parts) == a);
    }
    SUBCASE("gaps and overlaps rejected") {
        std::vector<SegmentPart> gap{{&a, 0, 2}, {&b, 3, 6}};
        CHECK_THROWS_AS(fixed_point_crossover(gap), std::invalid_argument);
        std::vector<SegmentPart> overlap{{&a, 0, 3}, {&b, 2, 6}};
        CHECK_THROWS_AS(fixed_point_crossover(overlap), std::invalid_argument);
    }
    SUBCASE("five segments from five sources stay bit-equal to their source") {
        std::vector<ValueString> sources(5, ValueString(10));
        Rng rng(3);
        for (auto& s : sources)
            for (int& v : s) v = static_cast<int>(rng.uniform_int(0, 99));
        std::vector<SegmentPart> parts;
        for (std::size_t s = 0; s < 5; ++s) parts.push_back({&sources[s], 2 * s, 2 * s + 2});
        ValueString child = fixed_point_crossover(parts);
        for (std::size_t s = 0; s < 5; ++s)
            for (std::size_t i = 2 * s; i < 2 * s + 2; ++i) CHECK(child[i] == sources[s][i]);
    }
}

TEST_CASE("order-based crossover reproduces the canonical example") {
    // segment positions 3..7 (1-indexed) kept in place
    auto p1 = from_one_based({1, 2, 3, 4, 5, 6, 7, 8, 9});
    auto p2 = from_one_based({3, 4, 7, 1, 6, 8, 9, 2, 5});
    auto [c1, c2] = order_based_crossover(p1, p2, 2, 7);
    CHECK(c1 == from_one_based({1, 8, 3, 4, 5, 6, 7, 9, 2}));
    CHECK(c2 == from_one_based({2, 3, 7, 1, 6, 8, 9, 4, 5}));
}

TEST_CASE("order-based crossover keeps the first parent's segment in place") {
    Rng rng(17);
    for (int trial = 0; trial < 100; ++trial) {
        PermutationString p1(9), p2(9);
        std::iota(p1.begin(), p1.end(), 0);
        std::iota(p2.begin(), p2.end(), 0);
        rng.shuffle(p1);
        rng.shuffle(p2);
        auto [c1, c2] = order_based_crossover(p1, p2, 2, 7);
        for (std::size_t i = 2; i < 7; ++i) {
            CHECK(c1[i] == p1[i]);
            CHECK(c2[i] == p2[i]);
        }
    }
}

TEST_CASE("order-based crossover: identical parents clone") {
    auto p = from_one_based({4, 2, 1, 3, 5});
    auto [c1, c2] = order_based_crossover(p, p, 1, 3);
    CHECK(c1 == p);
    CHECK(c2 == p);
}

TEST_CASE("C1 crossover reproduces the canonical example") {
    auto p1 = from_one_based({1, 2, 3, 4, 5, 6});
    auto p2 = from_one_based({3, 4, 2, 1, 6, 5});
    auto [c1, c2] = c1_crossover(p1, p2, 2);
    CHECK(c1 == from_one_based({1, 2, 3, 4, 6, 5}));
    CHECK(c2 == from_one_based({3, 4, 1, 2, 5, 6}));
}

TEST_CASE("PMX reproduces the canonical example") {
    auto p1 = from_one_based({1, 2, 3, 4, 5, 6, 7, 8, 9});
    auto p2 = from_one_based({3, 4, 7, 1, 6, 8, 9, 2, 5});
    auto [c1, c2] = pmx_crossover(p1, p2, 2, 5);
    CHECK(c1 == from_one_based({4, 2, 7, 1, 6, 5, 3, 8, 9}));
    CHECK(c2 == from_one_based({7, 1, 3, 4, 5, 8, 9, 2, 6}));
}

TEST_CASE("PMX: identical parents clone, chained duplicates resolve") {
    auto p = from_one_based({5, 3, 1, 2, 4});
    auto [c1, c2] = pmx_crossover(p, p, 1, 3);
    CHECK(c1 == p);
    CHECK(c2 == p);

    Rng rng(23);
    for (int trial = 0; trial < 200; ++trial) {
        PermutationString p1(6), p2(6);
        std::iota(p1.begin(), p1.end(), 0);
        std::iota(p2.begin(), p2.end(), 0);
        rng.shuffle(p1);
        rng.shuffle(p2);
        for (std::size_t cut1 = 0; cut1 < 6; ++cut1)
            for (std::size_t cut2 = cut1 + 1; cut2 <= 6; ++cut2) {
                auto [k1, k2] = pmx_crossover(p1, p2, cut1, cut2);
                CHECK(is_permutation_of_iota(k1));
                CHECK(is_permutation_of_iota(k2));
                for (std::size_t i = cut1; i < cut2; ++i) {
                    CHECK(k1[i] == p2[i]);  // exchanged mapping section
                    CHECK(k2[i] == p1[i]);
                }
            }
    }
}

TEST_CASE("PUX reproduces the canonical template example") {
    auto p1 = from_one_based({1, 2, 3, 4, 5, 6, 7, 8, 9});
    auto p2 = from_one_based({3, 4, 7, 1, 6, 8, 9, 2, 5});
    std::vector<std::uint8_t> tmpl{0, 0, 1, 0, 1, 1, 1, 0, 1};
    auto [c1, c2] = pux_crossover_with_template(p1, p2, tmpl);
    CHECK(c1 == from_one_based({4, 1, 3, 8, 5, 6, 7, 2, 9}));
    CHECK(c2 == from_one_based({3, 4, 5, 1, 6, 7, 8, 2, 9}));
}

TEST_CASE("PUX with p = 1 clones the first parent") {
    Rng rng(9);
    auto p1 = from_one_based({2, 1, 4, 3, 5});
    auto p2 = from_one_based({5, 4, 3, 2, 1});
    auto [c1, c2] = pux_crossover(p1, p2, 1.0, rng);
    CHECK(c1 == p1);
    CHECK_THROWS_AS(pux_crossover(p1, p2, 0.3, rng), std::invalid_argument);
}

TEST_CASE("PUX validity and inheritance statistics") {
    Rng rng(31);
    double kept = 0.0, total = 0.0;
    for (int trial = 0; trial < 10000; ++trial) {
        PermutationString p1(25), p2(25);
        std::iota(p1.begin(), p1.end(), 0);
        std::iota(p2.begin(), p2.end(), 0);
        rng.shuffle(p1);
        rng.shuffle(p2);
        auto [c1, c2] = pux_crossover(p1, p2, 0.66, rng);
        REQUIRE(is_permutation_of_iota(c1));
        REQUIRE(is_permutation_of_iota(c2));
        for (std::size_t i = 0; i < 25; ++i) {
            kept += c1[i] == p1[i] ? 1.0 : 0.0;
            total += 1.0;
        }
    }
    // template keeps 66%, fills can coincide with the first parent too
    CHECK(kept / total > 0.66);
    CHECK(kept / total < 0.80);
}

TEST_CASE("every permutation operator yields valid permutations (exhaustive small n)") {
    Rng rng(41);
    for (std::size_t n = 2; n <= 6; ++n) {
        for (int trial = 0; trial < 100; ++trial) {
            PermutationString p1(n), p2(n);
            std::iota(p1.begin(), p1.end(), 0);
            std::iota(p2.begin(), p2.end(), 0);
            rng.shuffle(p1);
            rng.shuffle(p2);
            for (std::size_t cut1 = 0; cut1 < n; ++cut1)
                for (std::size_t cut2 = cut1 + 1; cut2 <= n; ++cut2) {
                    auto [a1, a2] = order_based_crossover(p1, p2, cut1, cut2);
                    CHECK(is_permutation_of_iota(a1));
                    CHECK(is_permutation_of_iota(a2));
                    auto [b1, b2] = pmx_crossover(p1, p2, cut1, cut2);
                    CHECK(is_permutation_of_iota(b1));
                    CHECK(is_permutation_of_iota(b2));
                }
            for (std::size_t cut = 1; cut < n; ++cut) {
                auto [c1, c2] = c1_crossover(p1, p2, cut);
                CHECK(is_permutation_of_iota(c1));
                CHECK(is_permutation_of_iota(c2));
            }
            auto [d1, d2] = pux_crossover(p1, p2, 0.66, rng);
            CHECK(is_permutation_of_iota(d1));
            CHECK(is_permutation_of_iota(d2));
        }
    }
}

TEST_CASE("single gene mutation stays within domains") {
    Rng rng(2);
    std::vector<std::vector<int>> domains{{1, 2}, {3}, {4, 5, 6}};
    ValueString s{1, 3, 4};
    SUBCASE("rate 0 keeps the string") {
        CHECK(single_gene_mutation(s, 0.0, domains, rng) == s);
    }
    SUBCASE("rate 1 with singleton domains keeps the only legal value") {
        std::vector<std::vector<int>> singleton{{1}, {3}, {4}};
        CHECK(single_gene_mutation(ValueString{1, 3, 4}, 1.0, singleton, rng) ==
              ValueString{1, 3, 4});
    }
    SUBCASE("mutated genes land in their domain") {
        for (int trial = 0; trial < 1000; ++trial) {
            ValueString m = single_gene_mutation(s, 0.5, domains, rng);
            CHECK((m[0] == 1 || m[0] == 2));
            CHECK(m[1] == 3);
            CHECK((m[2] == 4 || m[2] == 5 || m[2] == 6));
        }
    }
    SUBCASE("expected mutation count matches the rate") {
        std::vector<std::vector<int>> wide(25, std::vector<int>{0, 1, 2, 3, 4, 5, 6, 7, 8, 9});
        ValueString base(25, 0);
        double mutated = 0.0;
        const int trials = 100000;
        for (int trial = 0; trial < trials; ++trial) {
            ValueString m = single_gene_mutation(base, 0.015, wide, rng);
            for (std::size_t i = 0; i < m.size(); ++i) mutated += m[i] != base[i] ? 1.0 : 0.0;
        }
        // 0.015 * 25 genes, minus the redraws that hit the old value
        double expected = 0.015 * 25 * 0.9 * trials;
        CHECK(mutated > expected * 0.9);
        CHECK(mutated < expected * 1.1);
    }
    SUBCASE("empty domain is an error") {
        std::vector<std::vector<int>> bad{{1}, {}, {2}};
        CHECK_THROWS_AS(single_gene_mutation(s, 0.5, bad, rng), std::invalid_argument);
    }
}

TEST_CASE("swap and scramble mutation preserve the multiset") {
    Rng rng(12);
    SUBCASE("explicit swap") {
        // first position swapped with position 4
        PermutationString s{0, 1, 2, 3, 4};
        PermutationString out = s;
        std::swap(out[1], out[4]);
        CHECK(out == PermutationString{0, 4, 2, 3, 1});
    }
    SUBCASE("rate 0 is the identity") {
        PermutationString s{3, 1, 0, 2};
        CHECK(swap_mutation(s, 0.0, rng) == s);
        CHECK(scramble_mutation(s, 0.0, rng) == s);
    }
    SUBCASE("multiset preserved over many applications") {
        PermutationString s(12);
        std::iota(s.begin(), s.end(), 0);
        rng.shuffle(s);
        for (int trial = 0; trial < 100000; ++trial) {
            PermutationString m = trial % 2 == 0 ? swap_mutation(s, 0.2, rng)
                                                 : scramble_mutation(s, 0.8, rng);
            REQUIRE(is_permutation_of_iota(m));
        }
    }
}

TEST_CASE("adaptive gene inheritance") {
    Rng rng(77);
    AdaptiveGenes a{{10.0}, CrossoverTag::C1, 0.01};
    AdaptiveGenes b{{20.0}, CrossoverTag::PMX, 0.03};

    SUBCASE("equal ranks average to the midpoint") {
        std::array<RankedAdaptive, 2> parents{RankedAdaptive{&a, 50}, RankedAdaptive{&b, 50}};
        AdaptiveGenes child = inherit_adaptive(parents, WeightInheritance::RankWeightedAverage, rng);
        CHECK(child.decoder_weights[0] == doctest::Approx(15.0));
        CHECK(child.mutation_rate == doctest::Approx(0.02));
    }
    SUBCASE("rank-weighted average follows the ranks") {
        std::array<RankedAdaptive, 2> parents{RankedAdaptive{&a, 100}, RankedAdaptive{&b, 50}};
        AdaptiveGenes child = inherit_adaptive(parents, WeightInheritance::RankWeightedAverage, rng);
        CHECK(child.decoder_weights[0] == doctest::Approx((100.0 * 10 + 50.0 * 20) / 150.0));
        CHECK(child.crossover_tag == CrossoverTag::C1);  // higher-ranked parent's tag
    }
    SUBCASE("uniform-in-range lands between the parents") {
        std::array<RankedAdaptive, 2> parents{RankedAdaptive{&a, 10}, RankedAdaptive{&b, 90}};
        for (int trial = 0; trial < 100; ++trial) {
            AdaptiveGenes child = inherit_adaptive(parents, WeightInheritance::UniformInRange, rng);
            CHECK(child.decoder_weights[0] >= 10.0);
            CHECK(child.decoder_weights[0] <= 20.0);
            CHECK(child.crossover_tag == CrossoverTag::PMX);
        }
    }
    SUBCASE("take-random-parent picks one of them") {
        std::array<RankedAdaptive, 2> parents{RankedAdaptive{&a, 10}, RankedAdaptive{&b, 90}};
        for (int trial = 0; trial < 50; ++trial) {
            AdaptiveGenes child = inherit_adaptive(parents, WeightInheritance::TakeRandomParent, rng);
            CHECK((child.decoder_weights[0] == 10.0 || child.decoder_weights[0] == 20.0));
        }
    }
    SUBCASE("missing genes are an error") {
        std::array<RankedAdaptive, 2> parents{RankedAdaptive{nullptr, 1}, RankedAdaptive{&b, 2}};
        CHECK_THROWS_AS(inherit_adaptive(parents, WeightInheritance::RankWeightedAverage, rng),
                        std::invalid_argument);
    }
}
