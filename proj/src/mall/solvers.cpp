#include <algorithm>
#include <chrono>
#include <numeric>
#include <stdexcept>

#include "mcga/hash.hpp"
#include "mcga/mall/domain.hpp"
#include "mcga/mall/solvers.hpp"

namespace mcga::mall {

MallDecoderWeights weight_preset(MallWeightPreset preset) {
    switch (preset) {
        case MallWeightPreset::Low: return {500, 1000, 100, 200, 200, 2000};
        case MallWeightPreset::Medium: return {500, 1000, 250, 500, 200, 2000};
        case MallWeightPreset::High: return {500, 1000, 1000, 2000, 200, 2000};
        case MallWeightPreset::Auto: return {};
    }
    return {};
}

MallWeightPreset weight_preset_from_name(const std::string& name) {
    if (name == "low") return MallWeightPreset::Low;
    if (name == "medium") return MallWeightPreset::Medium;
    if (name == "high") return MallWeightPreset::High;
    if (name == "auto") return MallWeightPreset::Auto;
    throw std::invalid_argument("unknown weight preset: " + name);
}

MallAlgo mall_algo_from_name(const std::string& name) {
    if (name == "direct") return MallAlgo::Direct;
    if (name == "coevo") return MallAlgo::Coevo;
    if (name == "coevo-mate") return MallAlgo::CoevoMate;
    if (name == "coevo-repair") return MallAlgo::CoevoRepair;
    if (name == "indirect") return MallAlgo::Indirect;
    throw std::invalid_argument("unknown mall algorithm: " + name);
}

Layout decode_mall(const ops::PermutationString& perm, const MallInstance& instance,
                   const MallDecoderWeights& weights) {
    const int types = instance.shop_types;
    Layout layout(static_cast<std::size_t>(instance.locations), -1);

    std::vector<int> totals(static_cast<std::size_t>(types), 0);
    std::vector<std::vector<int>> per_area(
        static_cast<std::size_t>(types),
        std::vector<int>(static_cast<std::size_t>(instance.area_count), 0));
    int n_small = 0, n_medium = 0, n_large = 0;
    // distinct member types present per (area, group)
    std::vector<std::vector<int>> members_present(
        static_cast<std::size_t>(instance.area_count),
        std::vector<int>(instance.groups.size(), 0));

    int placed = 0;
    int below_min_need = 0;
    for (int j = 0; j < types; ++j) below_min_need += instance.min_count[static_cast<std::size_t>(j)];

    for (int location : perm) {
        const int k = instance.area_of[static_cast<std::size_t>(location)];
        const int remaining = instance.locations - placed;
        // once the leftover capacity is owed to the minima, only types still
        // below their minimum stay candidates
        const bool force_minima = below_min_need >= remaining;
        int best_type = -1;
        double best_score = 0.0;
        bool any_below_max = false;
        for (int j = 0; j < types; ++j)
            if (totals[static_cast<std::size_t>(j)] < instance.max_count[static_cast<std::size_t>(j)])
                any_below_max = true;

        if (!any_below_max) {
            // defensive fallback: the least over-full type
            int best_overflow = 0;
            for (int j = 0; j < types; ++j) {
                int overflow = totals[static_cast<std::size_t>(j)] -
                               instance.max_count[static_cast<std::size_t>(j)];
                if (best_type < 0 || overflow < best_overflow) {
                    best_type = j;
                    best_overflow = overflow;
                }
            }
        } else {
            for (int j = 0; j < types; ++j) {
                if (totals[static_cast<std::size_t>(j)] >=
                    instance.max_count[static_cast<std::size_t>(j)])
                    continue;
                if (force_minima && totals[static_cast<std::size_t>(j)] >=
                                        instance.min_count[static_cast<std::size_t>(j)])
                    continue;
                const int in_area = per_area[static_cast<std::size_t>(j)][static_cast<std::size_t>(k)];
                const int remainder = in_area % 3;
                const bool creates_small = remainder == 0;
                const bool creates_medium = remainder == 1;
                const bool creates_large = remainder == 2;
                double slack = 0.0;
                if (creates_small) slack = instance.max_small - n_small - 1;
                if (creates_medium) slack = instance.max_medium - n_medium - 1;
                if (creates_large) slack = instance.max_large - n_large - 1;

                double score = weights.w_medium * (creates_medium ? 1.0 : 0.0) +
                               weights.w_large * (creates_large ? 1.0 : 0.0) +
                               weights.w_size * slack +
                               weights.w_ideal * (instance.ideal_count[static_cast<std::size_t>(j)] -
                                                  (totals[static_cast<std::size_t>(j)] + 1));
                for (int l : instance.groups_of_type[static_cast<std::size_t>(j)]) {
                    const int group_size = static_cast<int>(instance.groups[static_cast<std::size_t>(l)].size());
                    const int present = members_present[static_cast<std::size_t>(k)][static_cast<std::size_t>(l)];
                    if (in_area == 0)
                        score += weights.w_member * (10.0 - group_size + present);
                    if (present + (in_area == 0 ? 1 : 0) == group_size)
                        score += weights.w_group;
                }
                score += instance.fixed_rent[static_cast<std::size_t>(j)][static_cast<std::size_t>(k)];
                if (best_type < 0 || score > best_score) {
                    best_type = j;
                    best_score = score;
                }
            }
        }

        layout[static_cast<std::size_t>(location)] = best_type;
        if (totals[static_cast<std::size_t>(best_type)] <
            instance.min_count[static_cast<std::size_t>(best_type)])
            --below_min_need;
        ++placed;
        int& in_area = per_area[static_cast<std::size_t>(best_type)][static_cast<std::size_t>(k)];
        switch (in_area % 3) {
            case 0: ++n_small; break;
            case 1: --n_small; ++n_medium; break;
            default: --n_medium; ++n_large; break;
        }
        if (in_area == 0)
            for (int l : instance.groups_of_type[static_cast<std::size_t>(best_type)])
                ++members_present[static_cast<std::size_t>(k)][static_cast<std::size_t>(l)];
        ++in_area;
        ++totals[static_cast<std::size_t>(best_type)];
    }
    return layout;
}

std::size_t mate_select(const Layout& first_parent, std::span<const Layout> candidates,
                        int candidate_area, const MallInstance& instance) {
    if (candidates.empty()) throw std::invalid_argument("no mate candidates");
    auto [begin, end] = instance.area_range[static_cast<std::size_t>(candidate_area)];

    std::size_t best = 0;
    long long best_score = -1;
    for (std::size_t c = 0; c < candidates.size(); ++c) {
        std::vector<int> totals(static_cast<std::size_t>(instance.shop_types), 0);
        for (int i = 0; i < instance.locations; ++i) {
            const Layout& source =
                (i >= begin && i < end) ? candidates[c] : first_parent;
            ++totals[static_cast<std::size_t>(source[static_cast<std::size_t>(i)])];
        }
        long long score = 0;
        for (int j = 0; j < instance.shop_types; ++j)
            score += std::abs(totals[static_cast<std::size_t>(j)] -
                              instance.ideal_count[static_cast<std::size_t>(j)]);
        if (best_score < 0 || score < best_score) {
            best_score = score;
            best = c;
        }
    }
    return best;
}

Layout shop_count_repair(const Layout& layout, const MallInstance& instance, Rng& rng) {
    Layout out = layout;
    std::vector<int> totals(static_cast<std::size_t>(instance.shop_types), 0);
    for (int t : out) ++totals[static_cast<std::size_t>(t)];

    for (int guard = 0; guard < instance.locations * 4; ++guard) {
        int deficient = -1;
        for (int j = 0; j < instance.shop_types; ++j)
            if (totals[static_cast<std::size_t>(j)] < instance.min_count[static_cast<std::size_t>(j)]) {
                deficient = j;
                break;
            }
        if (deficient < 0) break;

        std::vector<int> donors;
        for (int j = 0; j < instance.shop_types; ++j)
            if (j != deficient &&
                totals[static_cast<std::size_t>(j)] > instance.min_count[static_cast<std::size_t>(j)])
                donors.push_back(j);
        if (donors.empty()) break;
        int donor = donors[rng.uniform_index(donors.size())];

        // areas already holding the deficient type are preferred
        std::vector<char> area_has(static_cast<std::size_t>(instance.area_count), 0);
        for (int i = 0; i < instance.locations; ++i)
            if (out[static_cast<std::size_t>(i)] == deficient)
                area_has[static_cast<std::size_t>(instance.area_of[static_cast<std::size_t>(i)])] = 1;
        int chosen = -1;
        for (int pass = 0; pass < 2 && chosen < 0; ++pass)
            for (int i = 0; i < instance.locations; ++i) {
                if (out[static_cast<std::size_t>(i)] != donor) continue;
                bool preferred =
                    area_has[static_cast<std::size_t>(instance.area_of[static_cast<std::size_t>(i)])] != 0;
                if (pass == 0 && !preferred) continue;
                chosen = i;
                break;
            }
        if (chosen < 0) break;
        out[static_cast<std::size_t>(chosen)] = deficient;
        --totals[static_cast<std::size_t>(donor)];
        ++totals[static_cast<std::size_t>(deficient)];
    }
    return out;
}

namespace {

// ---- direct GA binding ----

class DirectMallProblem {
  public:
    using Genotype = Layout;
    using Eval = MallEval;

    DirectMallProblem(const MallInstance& instance, const MallOptions& options)
        : instance_(instance), opt_(options) {}

    Genotype sample(Rng& rng) const {
        Layout l(static_cast<std::size_t>(instance_.locations));
        for (int& t : l) t = static_cast<int>(rng.uniform_index(static_cast<std::size_t>(instance_.shop_types)));
        return l;
    }
    Eval evaluate(const Genotype& g) const { return evaluate_layout(g, instance_); }
    double fitness_key(const Eval& e, double w) const { return fitness_of(e, w); }
    bool is_feasible(const Eval& e) const { return e.feasible; }
    double natural_objective(const Eval& e) const { return e.rent; }
    bool natural_improves(double candidate, double incumbent) const {
        return candidate > incumbent;
    }
    double violation_units(const Eval& e) const { return e.violation; }

    std::vector<Genotype> crossover(std::span<const ga::ParentView<Genotype>> parents,
                                    Rng& rng) const {
        std::vector<Genotype> out;
        std::vector<const Layout*> rotated(parents.size());
        for (std::size_t shift = 0; shift < parents.size(); ++shift) {
            for (std::size_t i = 0; i < parents.size(); ++i)
                rotated[i] = parents[(i + shift) % parents.size()].genotype;
            out.push_back(ops::param_uniform_crossover(rotated, opt_.uniform_p, rng));
        }
        return out;
    }

    void mutate(Genotype& g, double rate, Rng& rng) const {
        for (int& t : g)
            if (rng.bernoulli(rate))
                t = static_cast<int>(rng.uniform_index(static_cast<std::size_t>(instance_.shop_types)));
    }

    std::uint64_t genotype_hash(const Genotype& g) const { return fnv1a_ints(g); }

  private:
    const MallInstance& instance_;
    MallOptions opt_;
};

// ---- indirect GA binding ----

class IndirectMallProblem {
  public:
    using Genotype = PermGenotype;
    struct Eval {
        MallEval mall;
        Layout layout;
    };

    IndirectMallProblem(const MallInstance& instance, const MallOptions& options)
        : instance_(instance), opt_(options) {
        adaptive_ranges_.weight_count = opt_.weights == MallWeightPreset::Auto ? 6 : 0;
        adaptive_ranges_.weight_lo = 0.0;
        adaptive_ranges_.weight_hi = 10000.0;
        adaptive_ranges_.tag_enabled = opt_.adaptive_crossover;
        adaptive_ranges_.rate_enabled = opt_.adaptive_mutation;
    }

    Genotype sample(Rng& rng) const {
        Genotype g;
        g.order.resize(static_cast<std::size_t>(instance_.locations));
        std::iota(g.order.begin(), g.order.end(), 0);
        rng.shuffle(g.order);
        g.aux = ops::init_adaptive(adaptive_ranges_, rng);
        return g;
    }

    MallDecoderWeights weights_of(const Genotype& g) const {
        if (opt_.weights != MallWeightPreset::Auto) return weight_preset(opt_.weights);
        const auto& w = g.aux.decoder_weights;
        return MallDecoderWeights{w[0], w[1], w[2], w[3], w[4], w[5]};
    }

    Eval evaluate(const Genotype& g) const {
        Eval eval;
        eval.layout = decode_mall(g.order, instance_, weights_of(g));
        eval.mall = evaluate_layout(eval.layout, instance_);
        return eval;
    }

    double fitness_key(const Eval& e, double w) const { return fitness_of(e.mall, w); }
    bool is_feasible(const Eval& e) const { return e.mall.feasible; }
    double natural_objective(const Eval& e) const { return e.mall.rent; }
    bool natural_improves(double candidate, double incumbent) const {
        return candidate > incumbent;
    }
    double violation_units(const Eval& e) const { return e.mall.violation; }

    std::vector<Genotype> crossover(std::span<const ga::ParentView<Genotype>> parents,
                                    Rng& rng) const {
        const Genotype& a = *parents[0].genotype;
        const Genotype& b = *parents[1].genotype;
        PermCrossover op = opt_.crossover;
        ops::CrossoverTag tag = ops::CrossoverTag::PUX66;
        if (opt_.adaptive_crossover) {
            tag = parents[0].rank >= parents[1].rank ? a.aux.crossover_tag : b.aux.crossover_tag;
            op = tag == ops::CrossoverTag::C1 ? PermCrossover::C1
                 : tag == ops::CrossoverTag::PMX ? PermCrossover::PMX
                                                 : PermCrossover::PUX;
        }
        const std::size_t n = a.order.size();
        std::pair<ops::PermutationString, ops::PermutationString> kids;
        switch (op) {
            case PermCrossover::OrderBased: {
                std::size_t c1 = rng.uniform_index(n);
                std::size_t c2 = c1 + 1 + rng.uniform_index(n - c1);
                kids = ops::order_based_crossover(a.order, b.order, c1, c2);
                break;
            }
            case PermCrossover::C1: {
                std::size_t cut = 1 + rng.uniform_index(n - 1);
                kids = ops::c1_crossover(a.order, b.order, cut);
                break;
            }
            case PermCrossover::PMX: {
                std::size_t c1 = rng.uniform_index(n);
                std::size_t c2 = c1 + 1 + rng.uniform_index(n - c1);
                kids = ops::pmx_crossover(a.order, b.order, c1, c2);
                break;
            }
            case PermCrossover::PUX:
                kids = ops::pux_crossover(a.order, b.order, opt_.pux_p, rng);
                break;
        }
        std::vector<Genotype> out(2);
        out[0].order = std::move(kids.first);
        out[1].order = std::move(kids.second);
        if (!adaptive_ranges_.weight_count && !adaptive_ranges_.tag_enabled &&
            !adaptive_ranges_.rate_enabled)
            return out;
        std::array<ops::RankedAdaptive, 2> ranked{
            ops::RankedAdaptive{&a.aux, parents[0].rank},
            ops::RankedAdaptive{&b.aux, parents[1].rank}};
        for (Genotype& child : out) {
            child.aux = ops::inherit_adaptive(ranked, opt_.weight_inheritance, rng);
            child.aux.crossover_tag = tag;
        }
        return out;
    }

    void mutate(Genotype& g, double rate, Rng& rng) const {
        if (opt_.adaptive_mutation) rate = g.aux.mutation_rate;
        g.order = ops::swap_mutation(g.order, rate, rng);
        // mutating a string also refreshes its adaptive genes, drawn anew in
        // their full ranges, at the same per-string rate
        if ((adaptive_ranges_.weight_count > 0 || adaptive_ranges_.tag_enabled ||
             adaptive_ranges_.rate_enabled) &&
            rng.bernoulli(rate))
            g.aux = ops::init_adaptive(adaptive_ranges_, rng);
    }

    std::uint64_t genotype_hash(const Genotype& g) const { return perm_genotype_hash(g); }

  private:
    const MallInstance& instance_;
    MallOptions opt_;
    ops::AdaptiveRanges adaptive_ranges_;
};

// ---- area-based co-evolution ----

struct MallInd {
    Layout genotype;
    MallEval full;
    double pseudo = 0.0;  // area pseudo fitness for area populations
};

class MallCoevoSolver {
  public:
    MallCoevoSolver(const MallInstance& instance, const MallOptions& options)
        : instance_(instance), opt_(options) {}

    SolveOutcome solve(std::uint64_t seed);

  private:
    struct Pop {
        int area = -1;  // -1: main population
        std::vector<MallInd> members;
        bool is_main() const { return area < 0; }
    };

    MallInd make_individual(Layout layout, const Pop& pop) {
        MallInd ind;
        ind.genotype = std::move(layout);
        ind.full = evaluate_layout(ind.genotype, instance_);
        if (!pop.is_main()) ind.pseudo = area_pseudo_fitness(ind.genotype, pop.area, instance_);
        note(ind);
        return ind;
    }

    double key_of(const MallInd& ind, const Pop& pop, double w) const {
        return pop.is_main() ? fitness_of(ind.full, w) : -ind.pseudo;
    }

    void note(const MallInd& ind) {
        double key = fitness_of(ind.full, w_);
        if (!have_best_ || key < best_key_) {
            have_best_ = true;
            best_key_ = key;
            best_layout_ = ind.genotype;
            out_.best_fitness = key;
        }
        if (ind.full.feasible &&
            (!out_.found_feasible || ind.full.rent > out_.best_objective)) {
            out_.found_feasible = true;
            out_.best_objective = ind.full.rent;
            out_.best_solution = ind.genotype;
        }
    }

    Layout random_layout(Rng& rng) const {
        Layout l(static_cast<std::size_t>(instance_.locations));
        for (int& t : l)
            t = static_cast<int>(rng.uniform_index(static_cast<std::size_t>(instance_.shop_types)));
        return l;
    }

    void mutate(Layout& l, Rng& rng) const {
        for (int& t : l)
            if (rng.bernoulli(opt_.ga.mutation_rate))
                t = static_cast<int>(rng.uniform_index(static_cast<std::size_t>(instance_.shop_types)));
    }

    const MallInstance& instance_;
    MallOptions opt_;
    std::vector<Pop> pops_;
    double w_ = 30.0;
    SolveOutcome out_;
    bool have_best_ = false;
    double best_key_ = 0.0;
    Layout best_layout_;
};

SolveOutcome MallCoevoSolver::solve(std::uint64_t seed) {
    const auto start = std::chrono::steady_clock::now();
    Rng rng(seed);
    w_ = opt_.ga.penalty_params.fixed_w;

    const std::size_t total = static_cast<std::size_t>(opt_.ga.population_size);
    const std::size_t area_size = std::max<std::size_t>(total / 8, 4);
    const std::size_t main_size =
        total - area_size * static_cast<std::size_t>(instance_.area_count);

    pops_.assign(static_cast<std::size_t>(instance_.area_count) + 1, {});
    for (int k = 0; k < instance_.area_count; ++k) pops_[static_cast<std::size_t>(k)].area = k;
    for (std::size_t p = 0; p < pops_.size(); ++p) {
        std::size_t size = pops_[p].is_main() ? main_size : area_size;
        for (std::size_t m = 0; m < size; ++m)
            pops_[p].members.push_back(make_individual(random_layout(rng), pops_[p]));
    }
    {
        std::uint64_t h = 0xcbf29ce484222325ULL;
        for (const Pop& pop : pops_)
            for (const MallInd& ind : pop.members) h = hash_combine_u64(h, fnv1a_ints(ind.genotype));
        out_.initial_population_hash = h;
    }

    std::vector<double> history{best_key_};
    Pop& main = pops_.back();
    std::optional<double> prev_main_best;
    int generation = 0;

    while (!ga::should_stop(history, opt_.ga.stop_stagnation) &&
           generation < opt_.ga.max_generations) {
        ++generation;
        std::size_t total_before = 0;
        for (Pop& pop : pops_) {
            total_before += pop.members.size();
            std::stable_sort(pop.members.begin(), pop.members.end(),
                             [&](const MallInd& a, const MallInd& b) {
                                 return key_of(a, pop, w_) < key_of(b, pop, w_);
                             });
        }

        for (Pop& pop : pops_) {
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

            std::vector<MallInd> children;
            children.reserve(need);
            std::size_t child_index = 0;
            while (children.size() < need) {
                Layout child;
                if (!pop.is_main()) {
                    auto picks = ga::rank_select(capacity, 4, rng);
                    std::vector<const Layout*> parents(4);
                    for (std::size_t i = 0; i < 4; ++i)
                        parents[i] = &pop.members[picks[i]].genotype;
                    child = ops::param_uniform_crossover(parents, opt_.uniform_p, rng);
                } else {
                    switch (child_index % 3) {
                        case 0: {
                            // assembled from the area populations
                            child.assign(static_cast<std::size_t>(instance_.locations), 0);
                            for (int k = 0; k < instance_.area_count; ++k) {
                                const Pop& src = pops_[static_cast<std::size_t>(k)];
                                std::size_t pick = ga::rank_select(src.members.size(), 1, rng)[0];
                                auto [begin, end] = instance_.area_range[static_cast<std::size_t>(k)];
                                for (int i = begin; i < end; ++i)
                                    child[static_cast<std::size_t>(i)] =
                                        src.members[pick].genotype[static_cast<std::size_t>(i)];
                            }
                            break;
                        }
                        case 1: {
                            // main member crossed with one area member
                            std::size_t main_pick = ga::rank_select(capacity, 1, rng)[0];
                            const Layout& first = pop.members[main_pick].genotype;
                            int k = static_cast<int>(
                                rng.uniform_index(static_cast<std::size_t>(instance_.area_count)));
                            const Pop& src = pops_[static_cast<std::size_t>(k)];
                            std::size_t pick;
                            if (opt_.algo == MallAlgo::CoevoMate ||
                                opt_.algo == MallAlgo::CoevoRepair) {
                                std::vector<Layout> candidates;
                                auto picks = ga::rank_select(
                                    src.members.size(),
                                    static_cast<std::size_t>(opt_.mate_candidates), rng);
                                std::vector<std::size_t> indices(picks.begin(), picks.end());
                                for (std::size_t c : indices)
                                    candidates.push_back(src.members[c].genotype);
                                pick = indices[mate_select(first, candidates, k, instance_)];
                            } else {
                                pick = ga::rank_select(src.members.size(), 1, rng)[0];
                            }
                            child = first;
                            auto [begin, end] = instance_.area_range[static_cast<std::size_t>(k)];
                            for (int i = begin; i < end; ++i)
                                child[static_cast<std::size_t>(i)] =
                                    src.members[pick].genotype[static_cast<std::size_t>(i)];
                            if (opt_.algo == MallAlgo::CoevoRepair &&
                                rng.bernoulli(opt_.repair_probability))
                                child = shop_count_repair(child, instance_, rng);
                            break;
                        }
                        default: {
                            auto picks = ga::rank_select(capacity, 4, rng);
                            std::vector<const Layout*> parents(4);
                            for (std::size_t i = 0; i < 4; ++i)
                                parents[i] = &pop.members[picks[i]].genotype;
                            child = ops::param_uniform_crossover(parents, opt_.uniform_p, rng);
                            break;
                        }
                    }
                    ++child_index;
                }
                mutate(child, rng);
                children.push_back(make_individual(std::move(child), pop));
            }

            pop.members = ga::replace_population(pop.members, std::move(children), capacity,
                                                 opt_.ga.elite_fraction, opt_.ga.dedupe_elites);
        }

        std::size_t total_after = 0;
        for (const Pop& pop : pops_) total_after += pop.members.size();
        if (total_after != total_before) ++out_.invariant_violations;

        double now = key_of(main.members.front(), main, w_);
        for (const MallInd& ind : main.members) now = std::min(now, key_of(ind, main, w_));
        if (prev_main_best && now > *prev_main_best + 1e-9) ++out_.invariant_violations;
        prev_main_best = now;

        history.push_back(best_key_);
        if (opt_.ga.record_convergence) {
            double best = now, sum = 0.0;
            for (const MallInd& ind : main.members) sum += key_of(ind, main, w_);
            out_.convergence.emplace_back(best,
                                          sum / static_cast<double>(main.members.size()));
        }
    }

    if (!out_.found_feasible) out_.best_solution = best_layout_;
    out_.generations = generation;
    out_.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return out_;
}

template <typename P>
SolveOutcome outcome_from_run(const P& problem, const ga::GaConfig& cfg, std::uint64_t seed) {
    auto run = ga::run(problem, cfg, seed);
    SolveOutcome out;
    out.found_feasible = run.best_feasible_objective.has_value();
    out.best_objective = run.best_feasible_objective.value_or(0.0);
    out.best_fitness = run.best_overall_fitness;
    out.generations = run.generations;
    out.seconds = run.wall_seconds;
    out.invariant_violations = run.invariants.total();
    out.initial_population_hash = run.initial_population_hash;
    out.convergence = std::move(run.convergence);
    if constexpr (requires { run.best_feasible_eval->layout; }) {
        if (run.best_feasible_eval) out.best_solution = run.best_feasible_eval->layout;
    } else {
        if (run.best_feasible_genotype) out.best_solution = *run.best_feasible_genotype;
    }
    return out;
}

}  // namespace

SolveOutcome solve_mall(const MallInstance& instance, const MallOptions& options,
                        std::uint64_t seed) {
    switch (options.algo) {
        case MallAlgo::Direct: {
            DirectMallProblem problem(instance, options);
            return outcome_from_run(problem, options.ga, seed);
        }
        case MallAlgo::Indirect: {
            MallOptions opts = options;
            opts.ga.parents_per_crossover = 2;
            IndirectMallProblem problem(instance, opts);
            return outcome_from_run(problem, opts.ga, seed);
        }
        default: {
            MallCoevoSolver solver(instance, options);
            return solver.solve(seed);
        }
    }
}

}  // namespace mcga::mall
