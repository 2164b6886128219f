#include <algorithm>
#include <chrono>
#include <map>
#include <numeric>
#include <stdexcept>

#include "mcga/hash.hpp"
#include "mcga/nurse/direct.hpp"
#include "mcga/nurse/domain.hpp"

namespace mcga::nurse {

namespace {

// ---- incremental cover bookkeeping for the local heuristics ----

struct CoverCounts {
    std::array<std::array<int, kGradeCount>, kShiftCount> cum{};  // grade-cumulative cover

    static CoverCounts of(const Roster& roster, const NurseInstance& instance) {
        CoverCounts c;
        for (std::size_t i = 0; i < roster.size(); ++i) c.add(instance, i, roster[i], +1);
        return c;
    }
    void add(const NurseInstance& instance, std::size_t nurse, int pattern_id, int delta) {
        int g = instance.nurses[nurse].grade - 1;
        const ShiftPattern& p = instance.patterns[static_cast<std::size_t>(pattern_id)];
        for (int k = 0; k < kShiftCount; ++k)
            if (p.works(k))
                for (int s = g; s < kGradeCount; ++s)
                    cum[static_cast<std::size_t>(k)][static_cast<std::size_t>(s)] += delta;
    }
    int violation(const NurseInstance& instance) const {
        int v = 0;
        for (int k = 0; k < kShiftCount; ++k)
            for (int s = 0; s < kGradeCount; ++s)
                v += std::max(instance.demand[static_cast<std::size_t>(k)][static_cast<std::size_t>(s)] -
                                  cum[static_cast<std::size_t>(k)][static_cast<std::size_t>(s)],
                              0);
        return v;
    }
};

int roster_objective(const Roster& roster, const NurseInstance& instance) {
    int obj = 0;
    for (std::size_t i = 0; i < roster.size(); ++i) obj += instance.cost_of(i, roster[i]);
    return obj;
}

bool instance_has_extensions(const NurseInstance& instance) {
    for (const NurseSpec& n : instance.nurses)
        if (n.is_head || n.team) return true;
    return false;
}

}  // namespace

Roster chain_swap(const Roster& roster, const NurseInstance& instance, int max_cycle) {
    Roster out = roster;

    // identical nurses: same grade and same contract
    std::map<std::tuple<int, int, int, int, int>, std::vector<std::size_t>> groups;
    for (std::size_t i = 0; i < instance.nurse_count(); ++i) {
        const NurseSpec& n = instance.nurses[i];
        groups[{n.grade, n.day_shifts, n.night_shifts, n.combined ? n.combined->first : -1,
                n.combined ? n.combined->second : -1}]
            .push_back(i);
    }

    auto try_cycle = [&](std::span<const std::size_t> cycle) {
        int before = 0, after = 0;
        for (std::size_t pos = 0; pos < cycle.size(); ++pos) {
            std::size_t me = cycle[pos];
            std::size_t donor = cycle[(pos + 1) % cycle.size()];
            if (!instance.in_feasible_set(me, out[donor])) return false;
            before += instance.cost_of(me, out[me]);
            after += instance.cost_of(me, out[donor]);
        }
        if (after >= before) return false;
        std::vector<int> received(cycle.size());
        for (std::size_t pos = 0; pos < cycle.size(); ++pos)
            received[pos] = out[cycle[(pos + 1) % cycle.size()]];
        for (std::size_t pos = 0; pos < cycle.size(); ++pos) out[cycle[pos]] = received[pos];
        return true;
    };

    bool improved = true;
    for (int pass = 0; improved && pass < 32; ++pass) {
        improved = false;
        for (const auto& [key, members] : groups) {
            (void)key;
            if (members.size() < 2) continue;
            const int limit = std::min<int>(max_cycle, static_cast<int>(members.size()));
            // combinations of cycle length 2..limit, all cyclic orders
            std::vector<std::size_t> combo;
            auto run_orders = [&](auto&& self, std::vector<std::size_t> rest,
                                  std::vector<std::size_t> order) -> bool {
                if (rest.empty()) return try_cycle(order);
                for (std::size_t r = 0; r < rest.size(); ++r) {
                    std::vector<std::size_t> next_rest = rest;
                    next_rest.erase(next_rest.begin() + static_cast<std::ptrdiff_t>(r));
                    std::vector<std::size_t> next_order = order;
                    next_order.push_back(rest[r]);
                    if (self(self, std::move(next_rest), std::move(next_order))) return true;
                }
                return false;
            };
            auto run_combos = [&](auto&& self, std::size_t start, int need) -> bool {
                if (need == 0) {
                    // fix the first element, permute the rest: distinct cycles
                    std::vector<std::size_t> rest(combo.begin() + 1, combo.end());
                    return run_orders(run_orders, std::move(rest), {combo.front()});
                }
                for (std::size_t m = start; m < members.size(); ++m) {
                    combo.push_back(members[m]);
                    if (self(self, m + 1, need - 1)) {
                        combo.pop_back();
                        return true;
                    }
                    combo.pop_back();
                }
                return false;
            };
            for (int len = 2; len <= limit; ++len) {
                combo.clear();
                if (run_combos(run_combos, 0, len)) {
                    improved = true;
                    break;
                }
            }
        }
    }
    return out;
}

Roster special_swap(const Roster& roster, const NurseInstance& instance, Rng& rng) {
    CoverCounts cover = CoverCounts::of(roster, instance);
    int net = 0;
    for (int k = 0; k < kShiftCount; ++k)
        net += cover.cum[static_cast<std::size_t>(k)][kGradeCount - 1] -
               instance.demand[static_cast<std::size_t>(k)][kGradeCount - 1];
    if (net != -1) return roster;

    auto kind_of = [&](int pid) { return instance.patterns[static_cast<std::size_t>(pid)].kind; };

    for (std::size_t a = 0; a < instance.nurse_count(); ++a) {
        const NurseSpec& na = instance.nurses[a];
        if (na.is_special() || na.is_dummy_or_bank()) continue;
        if (na.day_shifts != na.night_shifts || na.day_shifts == 0) continue;
        if (kind_of(roster[a]) != PatternKind::Day) continue;
        const int k = na.day_shifts;
        for (std::size_t b = 0; b < instance.nurse_count(); ++b) {
            if (b == a) continue;
            const NurseSpec& nb = instance.nurses[b];
            if (nb.is_special() || nb.is_dummy_or_bank()) continue;
            if (nb.day_shifts != k || nb.night_shifts != k - 1) continue;
            if (kind_of(roster[b]) != PatternKind::Night) continue;

            const ShiftPattern& b_pattern = instance.patterns[static_cast<std::size_t>(roster[b])];
            // extra night: the most uncovered night not already in b's pattern
            int extra = -1, extra_short = -1;
            for (int shift = kDaysPerWeek; shift < kShiftCount; ++shift) {
                if (b_pattern.works(shift)) continue;
                int short_here =
                    std::max(instance.demand[static_cast<std::size_t>(shift)][kGradeCount - 1] -
                                 cover.cum[static_cast<std::size_t>(shift)][kGradeCount - 1],
                             0);
                if (short_here > extra_short) {
                    extra_short = short_here;
                    extra = shift;
                }
            }
            int a_new = -1;
            for (int pid : instance.feasible[a]) {
                const ShiftPattern& p = instance.patterns[static_cast<std::size_t>(pid)];
                if (p.kind != PatternKind::Night) continue;
                bool covers = extra >= 0 && p.works(extra);
                for (int shift = kDaysPerWeek; shift < kShiftCount && covers; ++shift)
                    if (b_pattern.works(shift) && !p.works(shift)) covers = false;
                if (covers) {
                    a_new = pid;
                    break;
                }
            }
            if (a_new < 0) continue;
            std::vector<int> b_days;
            for (int pid : instance.feasible[b])
                if (kind_of(pid) == PatternKind::Day) b_days.push_back(pid);
            if (b_days.empty()) continue;

            Roster out = roster;
            out[a] = a_new;
            out[b] = b_days[rng.uniform_index(b_days.size())];
            return out;
        }
    }
    return roster;
}

Roster adjacent_swap(const Roster& roster, const NurseInstance& instance) {
    Roster out = roster;
    CoverCounts cover = CoverCounts::of(out, instance);
    int violation = cover.violation(instance);

    auto aggregate_short = [&](int k) {
        return std::max(instance.demand[static_cast<std::size_t>(k)][kGradeCount - 1] -
                            cover.cum[static_cast<std::size_t>(k)][kGradeCount - 1],
                        0);
    };
    auto aggregate_surplus = [&](int k) {
        return std::max(cover.cum[static_cast<std::size_t>(k)][kGradeCount - 1] -
                            instance.demand[static_cast<std::size_t>(k)][kGradeCount - 1],
                        0);
    };

    for (std::size_t i = 0; i < instance.nurse_count(); ++i) {
        const ShiftPattern& p = instance.patterns[static_cast<std::size_t>(out[i])];
        bool on_surplus = false, on_shortage = false;
        for (int k = 0; k < kShiftCount; ++k) {
            if (!p.works(k)) continue;
            if (aggregate_surplus(k) > 0) on_surplus = true;
            if (aggregate_short(k) > 0) on_shortage = true;
        }
        if (!on_surplus || on_shortage) continue;

        for (int q : instance.feasible[i]) {
            if (q == out[i]) continue;
            const ShiftPattern& qp = instance.patterns[static_cast<std::size_t>(q)];
            if (qp.kind != p.kind || qp.day_count() != p.day_count() ||
                qp.night_count() != p.night_count())
                continue;
            if (adjacency_degree(p, qp) != 1) continue;
            int moved_to = -1, moved_from = -1;
            for (int k = 0; k < kShiftCount; ++k) {
                if (qp.works(k) && !p.works(k)) moved_to = k;
                if (p.works(k) && !qp.works(k)) moved_from = k;
            }
            if (moved_to < 0 || aggregate_short(moved_to) == 0) continue;
            if (moved_from < 0 || aggregate_surplus(moved_from) == 0) continue;

            CoverCounts trial = cover;
            trial.add(instance, i, out[i], -1);
            trial.add(instance, i, q, +1);
            int trial_violation = trial.violation(instance);
            if (trial_violation < violation) {
                out[i] = q;
                cover = trial;
                violation = trial_violation;
                break;
            }
        }
    }
    return out;
}

Roster hill_climb_repair(const Roster& roster, const NurseInstance& instance, double w) {
    Roster out = roster;
    const bool extended = instance_has_extensions(instance);
    CoverCounts cover = CoverCounts::of(out, instance);
    int objective = roster_objective(out, instance);
    int violation = cover.violation(instance);
    double extra = extended ? extended_penalty(out, instance, 5.0, 5.0) : 0.0;
    double best_key = objective + w * violation + extra;

    for (std::size_t i = 0; i < instance.nurse_count(); ++i) {
        for (int q : instance.feasible[i]) {
            if (q == out[i]) continue;
            CoverCounts trial = cover;
            trial.add(instance, i, out[i], -1);
            trial.add(instance, i, q, +1);
            int trial_obj = objective - instance.cost_of(i, out[i]) + instance.cost_of(i, q);
            int trial_violation = trial.violation(instance);
            double trial_extra = extra;
            if (extended) {
                Roster probe = out;
                probe[i] = q;
                trial_extra = extended_penalty(probe, instance, 5.0, 5.0);
            }
            double key = trial_obj + w * trial_violation + trial_extra;
            if (key < best_key - 1e-12) {
                out[i] = q;
                cover = trial;
                objective = trial_obj;
                violation = trial_violation;
                extra = trial_extra;
                best_key = key;
            }
        }
    }
    return out;
}

std::vector<Roster> delta_restart(const Roster& best, int level, double p_dc,
                                  const NurseInstance& instance, std::size_t population,
                                  Rng& rng) {
    if (level < 1) throw std::invalid_argument("delta level must be >= 1");
    // neighbourhoods: feasible patterns within the adjacency level, per nurse
    std::vector<std::vector<int>> neighbourhood(instance.nurse_count());
    for (std::size_t i = 0; i < instance.nurse_count(); ++i) {
        const ShiftPattern& base = instance.patterns[static_cast<std::size_t>(best[i])];
        for (int pid : instance.feasible[i]) {
            if (pid == best[i]) continue;
            const ShiftPattern& p = instance.patterns[static_cast<std::size_t>(pid)];
            int degree;
            if (p.kind == base.kind) {
                if (p.day_count() != base.day_count() || p.night_count() != base.night_count())
                    continue;
                degree = adjacency_degree(base, p);
            } else if (p.kind != PatternKind::Combined && base.kind != PatternKind::Combined) {
                degree = adjacency_degree(base, p);
            } else {
                continue;
            }
            if (degree >= 1 && degree <= level) neighbourhood[i].push_back(pid);
        }
    }

    std::vector<Roster> out(population, Roster(instance.nurse_count()));
    for (Roster& r : out) {
        for (std::size_t i = 0; i < instance.nurse_count(); ++i) {
            if (!rng.bernoulli(p_dc)) {
                r[i] = best[i];
            } else if (!neighbourhood[i].empty()) {
                r[i] = neighbourhood[i][rng.uniform_index(neighbourhood[i].size())];
            } else {
                r[i] = instance.feasible[i][rng.uniform_index(instance.feasible[i].size())];
            }
        }
    }
    return out;
}

// ---- plain direct GA binding ----

namespace {

class DirectNurseProblem {
  public:
    using Genotype = Roster;
    using Eval = NurseEval;

    DirectNurseProblem(const NurseInstance& instance, const DirectNurseOptions& options)
        : instance_(instance),
          opt_(options),
          extended_(instance_has_extensions(instance)) {}

    Genotype sample(Rng& rng) const {
        Roster r(instance_.nurse_count());
        for (std::size_t i = 0; i < r.size(); ++i)
            r[i] = instance_.feasible[i][rng.uniform_index(instance_.feasible[i].size())];
        return r;
    }

    Eval evaluate(const Genotype& g) const {
        NurseEval eval = nurse::evaluate(g, instance_);
        if (extended_)
            eval.extra_penalty = extended_penalty(g, instance_, opt_.w_head, opt_.w_team);
        return eval;
    }

    double fitness_key(const Eval& e, double w) const { return fitness_of(e, w); }
    bool is_feasible(const Eval& e) const { return e.feasible; }
    double natural_objective(const Eval& e) const { return e.objective; }
    bool natural_improves(double candidate, double incumbent) const {
        return candidate < incumbent;
    }
    double violation_units(const Eval& e) const { return e.violation; }

    // one child per invocation, rotating the favoured first-parent role
    std::vector<Genotype> crossover(std::span<const ga::ParentView<Genotype>> parents,
                                    Rng& rng) const {
        std::vector<Genotype> out;
        std::vector<const Roster*> rotated(parents.size());
        for (std::size_t shift = 0; shift < parents.size(); ++shift) {
            for (std::size_t i = 0; i < parents.size(); ++i)
                rotated[i] = parents[(i + shift) % parents.size()].genotype;
            out.push_back(ops::param_uniform_crossover(rotated, opt_.uniform_p, rng));
        }
        return out;
    }

    void mutate(Genotype& g, double rate, Rng& rng) const {
        g = ops::single_gene_mutation(g, rate, instance_.feasible, rng);
    }

    std::uint64_t genotype_hash(const Genotype& g) const { return fnv1a_ints(g); }

  private:
    const NurseInstance& instance_;
    DirectNurseOptions opt_;
    bool extended_;
};

// ---- co-operative co-evolution ----

struct CoevoInd {
    Roster genotype;
    double sub_objective = 0.0;
    int sub_violation = 0;
    NurseEval full;
    BalanceClass cls = BalanceClass::Undecided;
};

struct SubPop {
    std::vector<int> grade_set;  // empty = main population, full fitness
    std::vector<CoevoInd> members;
    penalty::State pstate;
    double best_key_so_far = 0.0;
    bool have_best = false;

    bool is_main() const { return grade_set.empty(); }
};

class CoevoSolver {
  public:
    CoevoSolver(const NurseInstance& instance, const DirectNurseOptions& options)
        : instance_(instance), opt_(options), extended_(instance_has_extensions(instance)) {
        grade_range_ = {instance.nurse_count(), 0, instance.nurse_count(), 0,
                        instance.nurse_count(), 0};
        for (std::size_t i = 0; i < instance.nurse_count(); ++i) {
            int g = instance.nurses[i].grade - 1;
            grade_range_[static_cast<std::size_t>(2 * g)] =
                std::min(grade_range_[static_cast<std::size_t>(2 * g)], i);
            grade_range_[static_cast<std::size_t>(2 * g + 1)] =
                std::max(grade_range_[static_cast<std::size_t>(2 * g + 1)], i + 1);
        }
        pseudo_ = pseudo_demand(instance.demand);
    }

    SolveOutcome solve(std::uint64_t seed);

  private:
    // sub-population index layout: 0..2 single grades, 3..5 pairs, 6 all
    // grades, 7 main
    static constexpr int kMain = 7;

    void seed_population(SubPop& pop, std::size_t size, Rng& rng,
                         const std::optional<Roster>& around, int level);
    CoevoInd make_individual(Roster roster, const SubPop& pop);
    void refresh_sub_eval(CoevoInd& ind, const SubPop& pop) const;
    double key_of(const CoevoInd& ind, const SubPop& pop, double w) const;
    void sort_pop(SubPop& pop);
    Roster breed_uniform(const SubPop& pop, Rng& rng);
    Roster breed_grade_based(int pop_index, Rng& rng);
    void run_epoch(std::vector<double>& history, Rng& rng);
    void migrate(Rng& rng);
    void note_individual(const CoevoInd& ind, double w);

    const NurseInstance& instance_;
    DirectNurseOptions opt_;
    bool extended_;
    std::array<std::size_t, 6> grade_range_;  // begin/end nurse index per grade
    std::array<std::array<int, kGradeCount>, kShiftCount> pseudo_{};
    std::vector<SubPop> pops_;
    int generation_ = 0;

    SolveOutcome out_;
    bool have_global_best_ = false;
    double global_best_key_ = 0.0;
    Roster global_best_roster_;
};

void CoevoSolver::refresh_sub_eval(CoevoInd& ind, const SubPop& pop) const {
    if (pop.is_main()) {
        ind.sub_objective = fitness_of(ind.full, 0.0);
        ind.sub_violation = ind.full.violation;
        return;
    }
    std::array<char, kGradeCount + 1> in_set{};
    for (int g : pop.grade_set) in_set[static_cast<std::size_t>(g)] = 1;
    double obj = 0.0;
    std::array<std::array<int, kGradeCount>, kShiftCount> exact{};
    for (std::size_t i = 0; i < ind.genotype.size(); ++i) {
        int g = instance_.nurses[i].grade;
        if (!in_set[static_cast<std::size_t>(g)]) continue;
        obj += instance_.cost_of(i, ind.genotype[i]);
        const ShiftPattern& p = instance_.patterns[static_cast<std::size_t>(ind.genotype[i])];
        for (int k = 0; k < kShiftCount; ++k)
            if (p.works(k)) ++exact[static_cast<std::size_t>(k)][static_cast<std::size_t>(g - 1)];
    }
    int viol = 0;
    for (int g : pop.grade_set)
        for (int k = 0; k < kShiftCount; ++k)
            viol += std::max(pseudo_[static_cast<std::size_t>(k)][static_cast<std::size_t>(g - 1)] -
                                 exact[static_cast<std::size_t>(k)][static_cast<std::size_t>(g - 1)],
                             0);
    ind.sub_objective = obj;
    ind.sub_violation = viol;
}

CoevoInd CoevoSolver::make_individual(Roster roster, const SubPop& pop) {
    CoevoInd ind;
    ind.genotype = std::move(roster);
    ind.full = nurse::evaluate(ind.genotype, instance_);
    if (extended_)
        ind.full.extra_penalty = extended_penalty(ind.genotype, instance_, opt_.w_head, opt_.w_team);
    ind.cls = classify_balance(ind.genotype, instance_);
    refresh_sub_eval(ind, pop);
    return ind;
}

double CoevoSolver::key_of(const CoevoInd& ind, const SubPop& pop, double w) const {
    if (!pop.is_main()) return ind.sub_objective + w * ind.sub_violation;
    double key = fitness_of(ind.full, w);
    if (opt_.algo == NurseAlgo::CoevoRepair)
        key = apply_incentives(key, ind.cls, w, opt_.incentives);
    return key;
}

void CoevoSolver::sort_pop(SubPop& pop) {
    const double w = pop.pstate.w;
    std::stable_sort(pop.members.begin(), pop.members.end(),
                     [&](const CoevoInd& a, const CoevoInd& b) {
                         return key_of(a, pop, w) < key_of(b, pop, w);
                     });
}

void CoevoSolver::note_individual(const CoevoInd& ind, double w) {
    double key = fitness_of(ind.full, w);
    if (!have_global_best_ || key < global_best_key_) {
        have_global_best_ = true;
        global_best_key_ = key;
        global_best_roster_ = ind.genotype;
        out_.best_fitness = key;
    }
    if (ind.full.feasible) {
        if (!out_.found_feasible || ind.full.objective < out_.best_objective) {
            out_.found_feasible = true;
            out_.best_objective = ind.full.objective;
            out_.best_solution = ind.genotype;
        }
    }
}

void CoevoSolver::seed_population(SubPop& pop, std::size_t size, Rng& rng,
                                  const std::optional<Roster>& around, int level) {
    pop.members.clear();
    std::vector<Roster> seeds;
    if (around) {
        seeds = delta_restart(*around, level, opt_.delta_p_dc, instance_, size, rng);
    } else {
        seeds.reserve(size);
        for (std::size_t m = 0; m < size; ++m) {
            Roster r(instance_.nurse_count());
            for (std::size_t i = 0; i < r.size(); ++i)
                r[i] = instance_.feasible[i][rng.uniform_index(instance_.feasible[i].size())];
            seeds.push_back(std::move(r));
        }
    }
    for (Roster& r : seeds) {
        CoevoInd ind = make_individual(std::move(r), pop);
        note_individual(ind, pop.pstate.w);
        pop.members.push_back(std::move(ind));
    }
}

Roster CoevoSolver::breed_uniform(const SubPop& pop, Rng& rng) {
    auto picks = ga::rank_select(pop.members.size(), 4, rng);
    std::vector<const Roster*> parents(4);
    for (std::size_t i = 0; i < 4; ++i) parents[i] = &pop.members[picks[i]].genotype;
    return ops::param_uniform_crossover(parents, opt_.uniform_p, rng);
}

Roster CoevoSolver::breed_grade_based(int pop_index, Rng& rng) {
    // valid grade-set combinations assembling a full string
    static const std::vector<std::vector<int>> kPairSources = {
        {0, 1}, {0, 2}, {1, 2}};  // for pops 3 ({1,2}), 4 ({1,3}), 5 ({2,3})
    std::vector<int> sources;
    if (pop_index >= 3 && pop_index <= 5) {
        sources = kPairSources[static_cast<std::size_t>(pop_index - 3)];
    } else if (pop_index == 6) {
        sources = {0, 1, 2};
    } else {
        static const std::vector<std::vector<int>> kMainCombos = {
            {0, 1, 2}, {0, 5}, {1, 4}, {2, 3}, {6, 0}, {6, 1}, {6, 2}, {6, 3}, {6, 4}, {6, 5}};
        sources = kMainCombos[rng.uniform_index(kMainCombos.size())];
    }

    // base string from the first source's parent, grade segments overridden
    // by each source parent's own grades
    Roster child(instance_.nurse_count());
    bool first = true;
    for (int src : sources) {
        const SubPop& pop = pops_[static_cast<std::size_t>(src)];
        std::size_t pick = ga::rank_select(pop.members.size(), 1, rng)[0];
        const Roster& parent = pop.members[pick].genotype;
        if (first) {
            child = parent;
            first = false;
        }
        for (int g : pop.grade_set) {
            std::size_t begin = grade_range_[static_cast<std::size_t>(2 * (g - 1))];
            std::size_t end = grade_range_[static_cast<std::size_t>(2 * (g - 1) + 1)];
            for (std::size_t i = begin; i < end && i < child.size(); ++i) child[i] = parent[i];
        }
    }
    return child;
}

void CoevoSolver::migrate(Rng& rng) {
    if (opt_.migration == MigrationMode::None || pops_.size() < 2) return;
    auto exchange = [&](std::size_t from_pop, std::size_t index) {
        std::size_t to_pop = rng.uniform_index(pops_.size() - 1);
        if (to_pop >= from_pop) ++to_pop;
        std::size_t partner = rng.uniform_index(pops_[to_pop].members.size());
        std::swap(pops_[from_pop].members[index], pops_[to_pop].members[partner]);
        refresh_sub_eval(pops_[from_pop].members[index], pops_[from_pop]);
        refresh_sub_eval(pops_[to_pop].members[partner], pops_[to_pop]);
    };

    if (opt_.migration == MigrationMode::RandomPerIndividual) {
        for (std::size_t p = 0; p < pops_.size(); ++p)
            for (std::size_t i = 0; i < pops_[p].members.size(); ++i)
                if (rng.bernoulli(opt_.migration_p)) exchange(p, i);
    } else if (generation_ > 0 && generation_ % opt_.migration_every == 0) {
        for (std::size_t p = 0; p < pops_.size(); ++p) {
            sort_pop(pops_[p]);
            std::size_t k = std::min<std::size_t>(static_cast<std::size_t>(opt_.migration_k),
                                                  pops_[p].members.size());
            for (std::size_t i = 0; i < k; ++i) exchange(p, i);
        }
    }
}

void CoevoSolver::run_epoch(std::vector<double>& history, Rng& rng) {
    while (!ga::should_stop(history, opt_.ga.stop_stagnation) &&
           generation_ < opt_.ga.max_generations) {
        ++generation_;
        for (SubPop& pop : pops_) sort_pop(pop);

        SubPop& main = pops_[kMain];
        const double w_main = main.pstate.w;

        // swap heuristics on the best of the main population
        if (opt_.algo != NurseAlgo::Direct) {
            std::size_t top = std::min<std::size_t>(static_cast<std::size_t>(opt_.swap_top),
                                                    main.members.size());
            for (std::size_t i = 0; i < top; ++i) {
                CoevoInd& ind = main.members[i];
                // guarded on raw fitness: repairs may lose a balance bonus
                double before = fitness_of(ind.full, w_main);
                Roster swapped = chain_swap(ind.genotype, instance_);
                swapped = special_swap(swapped, instance_, rng);
                swapped = adjacent_swap(swapped, instance_);
                if (swapped != ind.genotype) {
                    CoevoInd candidate = make_individual(std::move(swapped), main);
                    if (fitness_of(candidate.full, w_main) <= before + 1e-12) {
                        note_individual(candidate, w_main);
                        ind = std::move(candidate);
                    }
                }
            }
        }

        // hill-climbing repair of the top balanced (or feasible) solutions
        if (opt_.algo == NurseAlgo::CoevoRepair) {
            std::vector<std::size_t> targets;
            for (std::size_t i = 0; i < main.members.size() &&
                                    targets.size() < static_cast<std::size_t>(opt_.incentives.repair_top_k);
                 ++i)
                if (main.members[i].cls == BalanceClass::Balanced) targets.push_back(i);
            for (std::size_t i = 0; i < main.members.size() &&
                                    targets.size() < static_cast<std::size_t>(opt_.incentives.repair_top_k);
                 ++i)
                if (main.members[i].cls == BalanceClass::Feasible) targets.push_back(i);
            for (std::size_t idx : targets) {
                CoevoInd& ind = main.members[idx];
                Roster repaired = hill_climb_repair(ind.genotype, instance_, w_main);
                if (repaired != ind.genotype) {
                    CoevoInd candidate = make_individual(std::move(repaired), main);
                    if (fitness_of(candidate.full, w_main) <=
                        fitness_of(ind.full, w_main) + 1e-12) {
                        note_individual(candidate, w_main);
                        ind = std::move(candidate);
                    }
                }
            }
        }

        for (SubPop& pop : pops_) sort_pop(pop);

        // breed every population
        std::size_t total_before = 0;
        for (const SubPop& pop : pops_) total_before += pop.members.size();

        std::vector<std::vector<CoevoInd>> all_children(pops_.size());
        for (std::size_t p = 0; p < pops_.size(); ++p) {
            SubPop& pop = pops_[p];
            const std::size_t capacity = pop.members.size();
            const std::size_t elite_target = static_cast<std::size_t>(
                std::ceil(opt_.ga.elite_fraction * static_cast<double>(capacity)));
            std::size_t distinct = 0;
            for (std::size_t i = 0; i < capacity && distinct < elite_target; ++i) {
                bool dup = false;
                for (std::size_t j = 0; j < i && !dup; ++j)
                    dup = pop.members[j].genotype == pop.members[i].genotype;
                if (!dup) ++distinct;
            }
            const std::size_t need = capacity - distinct;
            auto& children = all_children[p];
            children.reserve(need);
            const bool grade_based_allowed = p >= 3 && p < pops_.size();
            while (children.size() < need) {
                Roster child;
                if (grade_based_allowed && rng.bernoulli(0.5))
                    child = breed_grade_based(static_cast<int>(p), rng);
                else
                    child = breed_uniform(pop, rng);
                child = ops::single_gene_mutation(child, opt_.ga.mutation_rate,
                                                  instance_.feasible, rng);
                CoevoInd ind = make_individual(std::move(child), pop);
                note_individual(ind, pops_[kMain].pstate.w);
                children.push_back(std::move(ind));
            }
        }

        // elitist monotonicity of the main population is checked under the
        // weight its elites were ranked with, before migration exchanges
        // individuals between populations
        const double main_before =
            key_of(pops_[kMain].members.front(), pops_[kMain], w_main);

        for (std::size_t p = 0; p < pops_.size(); ++p) {
            SubPop& pop = pops_[p];
            auto next = ga::replace_population(
                pop.members, std::move(all_children[p]), pop.members.size(),
                opt_.ga.elite_fraction, opt_.ga.dedupe_elites);
            pop.members = std::move(next);
        }
        {
            const SubPop& main_pop = pops_[kMain];
            double after = key_of(main_pop.members.front(), main_pop, w_main);
            for (const CoevoInd& ind : main_pop.members)
                after = std::min(after, key_of(ind, main_pop, w_main));
            if (after > main_before + 1e-9) ++out_.invariant_violations;
        }

        migrate(rng);

        std::size_t total_after = 0;
        for (const SubPop& pop : pops_) total_after += pop.members.size();
        if (total_after != total_before) ++out_.invariant_violations;

        // per-population penalty updates from each population's own bests
        for (SubPop& pop : pops_) {
            const double w = pop.pstate.w;
            const CoevoInd* best = nullptr;
            double best_key = 0.0;
            for (const CoevoInd& ind : pop.members) {
                double key = key_of(ind, pop, w);
                if (!best || key < best_key) {
                    best = &ind;
                    best_key = key;
                }
            }
            if (!pop.have_best || best_key < pop.best_key_so_far) {
                pop.have_best = true;
                pop.best_key_so_far = best_key;
            }
            pop.pstate.best_overall_fitness = pop.best_key_so_far;
            int viol = pop.is_main() ? best->full.violation : best->sub_violation;
            pop.pstate.best_violation = viol;
            if (viol == 0) {
                double obj = pop.is_main() ? best->full.objective : best->sub_objective;
                if (!pop.pstate.best_feasible_objective ||
                    obj < *pop.pstate.best_feasible_objective)
                    pop.pstate.best_feasible_objective = obj;
            }
            penalty::update_weight(pop.pstate);
        }

        // stopping history: global best full fitness so far
        history.push_back(global_best_key_);
        if (opt_.ga.record_convergence) {
            SubPop& pop = pops_[kMain];
            const double w = pop.pstate.w;
            double best = key_of(pop.members.front(), pop, w), sum = 0.0;
            for (const CoevoInd& ind : pop.members) {
                double key = key_of(ind, pop, w);
                best = std::min(best, key);
                sum += key;
            }
            out_.convergence.emplace_back(best, sum / static_cast<double>(pop.members.size()));
        }
    }
}

SolveOutcome CoevoSolver::solve(std::uint64_t seed) {
    const auto start = std::chrono::steady_clock::now();
    Rng rng(seed);

    const std::size_t total = static_cast<std::size_t>(opt_.ga.population_size);
    const std::size_t small = std::max<std::size_t>(total / 10, 4);
    const std::size_t main_size = total - 7 * small;

    static const std::vector<std::vector<int>> kGradeSets = {
        {1}, {2}, {3}, {1, 2}, {1, 3}, {2, 3}, {1, 2, 3}, {}};
    pops_.clear();
    for (std::size_t p = 0; p < kGradeSets.size(); ++p) {
        SubPop pop;
        pop.grade_set = kGradeSets[p];
        pop.pstate.strategy = opt_.ga.penalty_strategy;
        pop.pstate.params = opt_.ga.penalty_params;
        pop.pstate.w = opt_.ga.penalty_params.fixed_w;
        if (opt_.ga.assumed_feasible_cap)
            pop.pstate.best_feasible_objective = *opt_.ga.assumed_feasible_cap;
        pops_.push_back(std::move(pop));
    }

    auto seed_all = [&](const std::optional<Roster>& around, int level) {
        for (std::size_t p = 0; p < pops_.size(); ++p) {
            std::size_t size = p == kMain ? main_size : small;
            seed_population(pops_[p], size, rng, around, level);
            pops_[p].have_best = false;
        }
    };

    seed_all(std::nullopt, 0);
    {
        std::uint64_t h = 0xcbf29ce484222325ULL;
        for (const SubPop& pop : pops_)
            for (const CoevoInd& ind : pop.members) h = hash_combine_u64(h, fnv1a_ints(ind.genotype));
        out_.initial_population_hash = h;
    }

    std::vector<double> history{global_best_key_};
    run_epoch(history, rng);

    if (opt_.algo == NurseAlgo::Delta) {
        for (int level = 5; level >= 1; --level) {
            Roster around = out_.found_feasible ? out_.best_solution : global_best_roster_;
            generation_ = 0;
            seed_all(around, level);
            std::vector<double> delta_history{global_best_key_};
            run_epoch(delta_history, rng);
            out_.generations += generation_;
        }
    }

    if (!out_.found_feasible) out_.best_solution = global_best_roster_;
    out_.generations = std::max(out_.generations, generation_);
    out_.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return out_;
}

}  // namespace

SolveOutcome solve_nurse_direct(const NurseInstance& instance, const DirectNurseOptions& options,
                                std::uint64_t seed) {
    if (options.algo == NurseAlgo::Direct) {
        DirectNurseProblem problem(instance, options);
        auto run = ga::run(problem, options.ga, seed);
        SolveOutcome out;
        out.found_feasible = run.best_feasible_objective.has_value();
        out.best_objective = run.best_feasible_objective.value_or(0.0);
        out.best_fitness = run.best_overall_fitness;
        out.best_solution = run.best_feasible_genotype
                                ? *run.best_feasible_genotype
                                : run.best_overall_genotype;
        out.generations = run.generations;
        out.seconds = run.wall_seconds;
        out.invariant_violations = run.invariants.total();
        out.initial_population_hash = run.initial_population_hash;
        out.convergence = std::move(run.convergence);
        return out;
    }
    CoevoSolver solver(instance, options);
    return solver.solve(seed);
}

NurseAlgo nurse_algo_from_name(const std::string& name) {
    if (name == "direct") return NurseAlgo::Direct;
    if (name == "coevo") return NurseAlgo::Coevo;
    if (name == "coevo-repair") return NurseAlgo::CoevoRepair;
    if (name == "delta") return NurseAlgo::Delta;
    throw std::invalid_argument("unknown nurse algorithm: " + name);
}

}  // namespace mcga::nurse
