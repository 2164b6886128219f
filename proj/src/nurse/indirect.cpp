#include <algorithm>
#include <bit>
#include <numeric>
#include <stdexcept>

#include "mcga/hash.hpp"
#include "mcga/nurse/domain.hpp"
#include "mcga/nurse/indirect.hpp"

namespace mcga::nurse {

namespace {

bool is_day_position(const NurseInstance& instance, std::size_t nurse, int pos) {
    int pid = instance.feasible[nurse][static_cast<std::size_t>(pos)];
    return instance.patterns[static_cast<std::size_t>(pid)].kind == PatternKind::Day;
}

}  // namespace

std::vector<int> make_search_order(SearchOrderKind kind, const NurseInstance& instance,
                                   std::size_t nurse, Rng& rng) {
    const std::size_t count = instance.feasible[nurse].size();
    std::vector<int> order(count);
    std::iota(order.begin(), order.end(), 0);

    switch (kind) {
        case SearchOrderKind::LowDay:
            break;  // feasible sets list day patterns first
        case SearchOrderKind::RandOrder:
        case SearchOrderKind::Biased: {
            std::vector<int> days, nights;
            for (int pos : order)
                (is_day_position(instance, nurse, pos) ? days : nights).push_back(pos);
            rng.shuffle(days);
            rng.shuffle(nights);
            double day_first_p = kind == SearchOrderKind::Biased ? 0.75 : 0.5;
            bool day_first = days.empty() ? false : (nights.empty() || rng.bernoulli(day_first_p));
            order.clear();
            const std::vector<int>& first = day_first ? days : nights;
            const std::vector<int>& second = day_first ? nights : days;
            order.insert(order.end(), first.begin(), first.end());
            order.insert(order.end(), second.begin(), second.end());
            break;
        }
        case SearchOrderKind::Cheapest:
        case SearchOrderKind::RandCost: {
            std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
                return instance.costs[nurse][static_cast<std::size_t>(a)] <
                       instance.costs[nurse][static_cast<std::size_t>(b)];
            });
            if (kind == SearchOrderKind::RandCost && count > 1) {
                std::size_t start = rng.uniform_index(count);
                std::rotate(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(start),
                            order.end());
            }
            break;
        }
    }
    return order;
}

SearchOrders make_search_orders(SearchOrderKind kind, const NurseInstance& instance, Rng& rng) {
    SearchOrders orders;
    orders.order.reserve(instance.nurse_count());
    for (std::size_t i = 0; i < instance.nurse_count(); ++i)
        orders.order.push_back(make_search_order(kind, instance, i, rng));
    return orders;
}

std::vector<int> apply_simple_bound(std::span<const int> candidates, std::span<const int> p_row,
                                    std::optional<double> best_feasible_objective) {
    std::vector<int> kept(candidates.begin(), candidates.end());
    if (!best_feasible_objective) return kept;
    std::vector<int> filtered;
    for (int pos : candidates)
        if (p_row[static_cast<std::size_t>(pos)] <= *best_feasible_objective) filtered.push_back(pos);
    if (filtered.empty()) return kept;  // never empty the candidate set
    return filtered;
}

std::size_t boundary_point(std::span<const double> cumulative, std::optional<double> bound) {
    const std::size_t n = cumulative.size();
    if (!bound) return n;
    for (std::size_t i = 0; i < n; ++i)
        if (cumulative[i] > *bound) return i + 1;
    return n;
}

namespace {

// Shared decode workspace: cumulative provided cover per (shift, grade
// level) against the cumulative demand.
struct CoverWork {
    std::array<std::array<int, kGradeCount>, kShiftCount> provided{};

    int shortfall(const NurseInstance& instance, int shift, int level) const {
        return std::max(instance.demand[static_cast<std::size_t>(shift)][static_cast<std::size_t>(level)] -
                            provided[static_cast<std::size_t>(shift)][static_cast<std::size_t>(level)],
                        0);
    }
    void place(const NurseInstance& instance, std::size_t nurse, int pattern_id) {
        int g = instance.nurses[nurse].grade - 1;
        const ShiftPattern& p = instance.patterns[static_cast<std::size_t>(pattern_id)];
        for (int k = 0; k < kShiftCount; ++k)
            if (p.works(k))
                for (int s = g; s < kGradeCount; ++s)
                    ++provided[static_cast<std::size_t>(k)][static_cast<std::size_t>(s)];
    }
};

std::vector<int> bounded_candidates(const NurseInstance& instance, std::size_t nurse,
                                    std::span<const int> order, std::optional<double> bound) {
    // `order` holds positions into the feasible set; the bound filters on the
    // nurse's cost row.
    if (!bound) return std::vector<int>(order.begin(), order.end());
    return apply_simple_bound(order, instance.costs[nurse], bound);
}

}  // namespace

Roster decode_cover_highest(const ops::PermutationString& perm, const NurseInstance& instance,
                            std::optional<double> bound) {
    Roster roster(instance.nurse_count(), -1);
    CoverWork cover;

    for (int nurse_value : perm) {
        std::size_t i = static_cast<std::size_t>(nurse_value);
        const NurseSpec& nurse = instance.nurses[i];
        const int g = nurse.grade - 1;

        // Count shortfalls at the lowest grade level (own or deeper) that is
        // still uncovered anywhere.
        int level = g;
        for (; level < kGradeCount - 1; ++level) {
            int total = 0;
            for (int k = 0; k < kShiftCount; ++k) total += cover.shortfall(instance, k, level);
            if (total > 0) break;
        }

        std::array<int, kShiftCount> need{};
        for (int k = 0; k < kShiftCount; ++k) need[static_cast<std::size_t>(k)] =
            cover.shortfall(instance, k, level);

        // Desired shifts: the most uncovered ones, ties Sunday to Saturday.
        auto top_shifts = [&](int from, int to, int count) {
            std::vector<int> shifts;
            for (int k = from; k < to; ++k) shifts.push_back(k);
            std::stable_sort(shifts.begin(), shifts.end(), [&](int a, int b) {
                return need[static_cast<std::size_t>(a)] > need[static_cast<std::size_t>(b)];
            });
            shifts.resize(static_cast<std::size_t>(std::min<int>(count, to - from)));
            return shifts;
        };

        std::array<std::uint8_t, kShiftCount> desired{};
        if (nurse.is_special()) {
            for (int k : top_shifts(0, kDaysPerWeek, nurse.combined->first))
                desired[static_cast<std::size_t>(k)] = 1;
            for (int k : top_shifts(kDaysPerWeek, kShiftCount, nurse.combined->second))
                desired[static_cast<std::size_t>(k)] = 1;
        } else {
            bool day_allowed = nurse.preference != PreferenceClass::NightsOnly;
            bool night_allowed =
                nurse.preference != PreferenceClass::DaysOnly && nurse.night_shifts > 0;
            bool choose_day = true;
            if (day_allowed && night_allowed) {
                int best_shift = 0, best_need = -1;
                for (int k = 0; k < kShiftCount; ++k) {
                    if (need[static_cast<std::size_t>(k)] > best_need) {
                        best_need = need[static_cast<std::size_t>(k)];
                        best_shift = k;
                    }
                }
                choose_day = best_shift < kDaysPerWeek;
            } else {
                choose_day = day_allowed;
            }
            if (choose_day)
                for (int k : top_shifts(0, kDaysPerWeek, nurse.day_shifts))
                    desired[static_cast<std::size_t>(k)] = 1;
            else
                for (int k : top_shifts(kDaysPerWeek, kShiftCount, nurse.night_shifts))
                    desired[static_cast<std::size_t>(k)] = 1;
        }

        // The pattern covering the desired shifts, or failing that the
        // feasible pattern with the largest overlap, first in set order.
        std::vector<int> positions(instance.feasible[i].size());
        std::iota(positions.begin(), positions.end(), 0);
        std::vector<int> candidates = bounded_candidates(instance, i, positions, bound);
        int best_pos = candidates.front();
        int best_overlap = -1;
        for (int pos : candidates) {
            const ShiftPattern& p =
                instance.patterns[static_cast<std::size_t>(instance.feasible[i][static_cast<std::size_t>(pos)])];
            int overlap = 0;
            bool exact = true;
            for (int k = 0; k < kShiftCount; ++k) {
                bool want = desired[static_cast<std::size_t>(k)] != 0;
                if (p.works(k) && want) ++overlap;
                if (p.works(k) != want) exact = false;
            }
            if (exact) {
                best_pos = pos;
                break;
            }
            if (overlap > best_overlap) {
                best_overlap = overlap;
                best_pos = pos;
            }
        }
        roster[i] = instance.feasible[i][static_cast<std::size_t>(best_pos)];
        cover.place(instance, i, roster[i]);
    }
    return roster;
}

namespace {

Roster decode_scored(const ops::PermutationString& perm, const NurseInstance& instance,
                     const DecoderWeights& weights, const SearchOrders& orders, bool counted,
                     std::optional<double> bound) {
    Roster roster(instance.nurse_count(), -1);
    CoverWork cover;

    for (int nurse_value : perm) {
        std::size_t i = static_cast<std::size_t>(nurse_value);
        const int g = instance.nurses[i].grade;

        std::vector<int> candidates = bounded_candidates(instance, i, orders.order[i], bound);
        double best_score = 0.0;
        int best_pos = -1;
        for (int pos : candidates) {
            int pid = instance.feasible[i][static_cast<std::size_t>(pos)];
            const ShiftPattern& p = instance.patterns[static_cast<std::size_t>(pid)];
            double score =
                weights.w_p * (100.0 - instance.costs[i][static_cast<std::size_t>(pos)]);
            for (int s = g; s <= kGradeCount; ++s) {
                double contribution = 0.0;
                for (int k = 0; k < kShiftCount; ++k) {
                    if (!p.works(k)) continue;
                    int d = cover.shortfall(instance, k, s - 1);
                    contribution += counted ? d : (d > 0 ? 1 : 0);
                }
                score += weights.grade_weight(s) * contribution;
            }
            if (best_pos < 0 || score > best_score) {
                best_score = score;
                best_pos = pos;
            }
        }
        roster[i] = instance.feasible[i][static_cast<std::size_t>(best_pos)];
        cover.place(instance, i, roster[i]);
    }
    return roster;
}

}  // namespace

Roster decode_overall_contribution(const ops::PermutationString& perm,
                                   const NurseInstance& instance, const DecoderWeights& weights,
                                   const SearchOrders& orders, std::optional<double> bound) {
    return decode_scored(perm, instance, weights, orders, false, bound);
}

Roster decode_combined(const ops::PermutationString& perm, const NurseInstance& instance,
                       const DecoderWeights& weights, const SearchOrders& orders,
                       std::optional<double> bound) {
    return decode_scored(perm, instance, weights, orders, true, bound);
}

Roster decode(DecoderKind kind, const ops::PermutationString& perm, const NurseInstance& instance,
              const DecoderWeights& weights, const SearchOrders& orders,
              std::optional<double> bound) {
    switch (kind) {
        case DecoderKind::CoverHighest: return decode_cover_highest(perm, instance, bound);
        case DecoderKind::OverallContribution:
            return decode_overall_contribution(perm, instance, weights, orders, bound);
        case DecoderKind::Combined: return decode_combined(perm, instance, weights, orders, bound);
    }
    throw std::logic_error("unknown decoder");
}

namespace {

struct IndirectEval {
    NurseEval nurse;
    Roster roster;
};

class IndirectNurseProblem {
  public:
    using Genotype = PermGenotype;
    using Eval = IndirectEval;

    IndirectNurseProblem(const NurseInstance& instance, const IndirectNurseOptions& options,
                         SearchOrders orders)
        : instance_(instance), opt_(options), orders_(std::move(orders)) {
        has_extensions_ = false;
        for (const NurseSpec& n : instance.nurses)
            if (n.is_head || n.team) has_extensions_ = true;
        adaptive_ranges_.weight_count = opt_.adaptive ? kGradeCount : 0;
        adaptive_ranges_.weight_lo = 0.0;
        adaptive_ranges_.weight_hi = 100.0;
        adaptive_ranges_.tag_enabled = opt_.adaptive;
    }

    Genotype sample(Rng& rng) const {
        Genotype g;
        g.order.resize(instance_.nurse_count());
        std::iota(g.order.begin(), g.order.end(), 0);
        rng.shuffle(g.order);
        if (opt_.adaptive) g.aux = ops::init_adaptive(adaptive_ranges_, rng);
        return g;
    }

    Eval evaluate(const Genotype& g) const {
        DecoderWeights weights = opt_.weights;
        if (opt_.adaptive) {
            weights.w1 = g.aux.decoder_weights[0];
            weights.w2 = g.aux.decoder_weights[1];
            weights.w3 = g.aux.decoder_weights[2];
            weights.w_p = 1.0;
        }
        std::optional<double> bound = opt_.simple_bound ? bound_ : std::nullopt;
        Eval eval;
        eval.roster = decode(opt_.decoder, g.order, instance_, weights, orders_, bound);
        eval.nurse = nurse::evaluate(eval.roster, instance_);
        if (has_extensions_)
            eval.nurse.extra_penalty =
                extended_penalty(eval.roster, instance_, opt_.w_head, opt_.w_team);
        if (eval.nurse.feasible) {
            double objective = eval.nurse.objective;
            if (!bound_ || objective < *bound_) bound_ = objective;
        }
        return eval;
    }

    double fitness_key(const Eval& e, double w) const { return fitness_of(e.nurse, w); }
    bool is_feasible(const Eval& e) const { return e.nurse.feasible; }
    double natural_objective(const Eval& e) const { return e.nurse.objective; }
    bool natural_improves(double candidate, double incumbent) const {
        return candidate < incumbent;
    }
    double violation_units(const Eval& e) const { return e.nurse.violation; }

    std::vector<Genotype> crossover(std::span<const ga::ParentView<Genotype>> parents,
                                    Rng& rng) const {
        const Genotype& a = *parents[0].genotype;
        const Genotype& b = *parents[1].genotype;
        PermCrossover op = opt_.crossover;
        ops::CrossoverTag tag = ops::CrossoverTag::PUX66;
        if (opt_.adaptive) {
            tag = parents[0].rank >= parents[1].rank ? a.aux.crossover_tag : b.aux.crossover_tag;
            op = tag == ops::CrossoverTag::C1 ? PermCrossover::C1
                 : tag == ops::CrossoverTag::PMX ? PermCrossover::PMX
                                                 : PermCrossover::PUX;
        }
        const std::size_t n = a.order.size();
        std::size_t cut_limit = n;  // crossover restricted before the boundary
        if (opt_.boundary_crossover && bound_) {
            std::vector<double> cumulative = cumulative_costs(a);
            cut_limit = std::max<std::size_t>(boundary_point(cumulative, bound_), 2) ;
        }

        std::pair<ops::PermutationString, ops::PermutationString> kids;
        switch (op) {
            case PermCrossover::OrderBased: {
                std::size_t c1 = rng.uniform_index(n);
                std::size_t c2 = 1 + rng.uniform_index(n);
                if (c1 > c2) std::swap(c1, c2);
                if (c1 == c2) c2 = c1 < n ? c1 + 1 : c1 - 1;
                kids = ops::order_based_crossover(a.order, b.order, std::min(c1, c2),
                                                  std::max<std::size_t>(c1 + 1, c2));
                break;
            }
            case PermCrossover::C1: {
                std::size_t hi = std::min(cut_limit, n) - 1;
                std::size_t cut = 1 + rng.uniform_index(std::max<std::size_t>(hi, 1));
                kids = ops::c1_crossover(a.order, b.order, std::min(cut, n - 1));
                break;
            }
            case PermCrossover::PMX: {
                std::size_t c1 = rng.uniform_index(n);
                std::size_t c2 = 1 + rng.uniform_index(n);
                if (c1 > c2) std::swap(c1, c2);
                if (c1 == c2) c2 = c1 < n ? c1 + 1 : c1 - 1;
                kids = ops::pmx_crossover(a.order, b.order, std::min(c1, c2),
                                          std::max<std::size_t>(c1 + 1, c2));
                break;
            }
            case PermCrossover::PUX:
                kids = ops::pux_crossover(a.order, b.order, opt_.pux_p, rng);
                break;
        }

        std::vector<Genotype> out(2);
        out[0].order = std::move(kids.first);
        out[1].order = std::move(kids.second);
        if (opt_.adaptive) {
            std::array<ops::RankedAdaptive, 2> ranked{
                ops::RankedAdaptive{&a.aux, parents[0].rank},
                ops::RankedAdaptive{&b.aux, parents[1].rank}};
            for (Genotype& child : out) {
                child.aux = ops::inherit_adaptive(ranked, opt_.weight_inheritance, rng);
                child.aux.crossover_tag = tag;
            }
        }
        return out;
    }

    void mutate(Genotype& g, double rate, Rng& rng) const {
        if (opt_.scramble) {
            g.order = ops::scramble_mutation(g.order, rate, rng);
        } else {
            std::size_t partner_limit = 0;
            if (opt_.boundary_mutation && bound_)
                partner_limit = boundary_point(cumulative_costs(g), bound_);
            g.order = ops::swap_mutation(g.order, rate, rng, partner_limit);
        }
        // mutating a string also refreshes its adaptive genes in full ranges
        if (opt_.adaptive && rng.bernoulli(rate))
            g.aux = ops::init_adaptive(adaptive_ranges_, rng);
    }

    std::uint64_t genotype_hash(const Genotype& g) const { return perm_genotype_hash(g); }

  private:
    std::vector<double> cumulative_costs(const Genotype& g) const {
        DecoderWeights weights = opt_.weights;
        if (opt_.adaptive) {
            weights.w1 = g.aux.decoder_weights[0];
            weights.w2 = g.aux.decoder_weights[1];
            weights.w3 = g.aux.decoder_weights[2];
            weights.w_p = 1.0;
        }
        Roster roster = decode(opt_.decoder, g.order, instance_, weights, orders_,
                               opt_.simple_bound ? bound_ : std::nullopt);
        std::vector<double> cumulative(g.order.size(), 0.0);
        double acc = 0.0;
        for (std::size_t pos = 0; pos < g.order.size(); ++pos) {
            std::size_t nurse = static_cast<std::size_t>(g.order[pos]);
            acc += instance_.cost_of(nurse, roster[nurse]);
            cumulative[pos] = acc;
        }
        return cumulative;
    }

    const NurseInstance& instance_;
    IndirectNurseOptions opt_;
    SearchOrders orders_;
    bool has_extensions_ = false;
    ops::AdaptiveRanges adaptive_ranges_;
    // Best feasible objective seen in this run; drives the simple bound and
    // the boundary operators. One problem binding per single-threaded run.
    mutable std::optional<double> bound_;
};

}  // namespace

SolveOutcome solve_nurse_indirect(const NurseInstance& instance,
                                  const IndirectNurseOptions& options, std::uint64_t seed) {
    Rng order_rng(hash_combine_u64(seed, 0x5eac0de5ULL));
    SearchOrders orders = make_search_orders(options.order, instance, order_rng);
    IndirectNurseProblem problem(instance, options, std::move(orders));

    auto run = ga::run(problem, options.ga, seed);

    SolveOutcome out;
    out.found_feasible = run.best_feasible_objective.has_value();
    out.best_objective = run.best_feasible_objective.value_or(0.0);
    out.best_fitness = run.best_overall_fitness;
    out.generations = run.generations;
    out.seconds = run.wall_seconds;
    out.invariant_violations = run.invariants.total();
    out.initial_population_hash = run.initial_population_hash;
    out.convergence = std::move(run.convergence);
    if (run.best_feasible_eval) out.best_solution = run.best_feasible_eval->roster;
    return out;
}

}  // namespace mcga::nurse
