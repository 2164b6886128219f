#include "mcga/operators.hpp"

#include <algorithm>
#include <stdexcept>

namespace mcga::ops {

namespace {

void check_equal_lengths(std::size_t a, std::size_t b) {
    if (a != b) throw std::invalid_argument("parent strings differ in length");
}

// Values of `donor` not yet present in the child, in donor order, written
// into the child's unfilled slots left to right. `used[v]` marks values
// already placed.
void fill_missing_in_order(PermutationString& child, std::vector<char>& used,
                           const PermutationString& donor) {
    std::size_t slot = 0;
    for (int v : donor) {
        if (used[static_cast<std::size_t>(v)]) continue;
        while (slot < child.size() && child[slot] >= 0) ++slot;
        child[slot] = v;
        used[static_cast<std::size_t>(v)] = 1;
    }
}

}  // namespace

bool is_permutation_of_iota(const PermutationString& s) {
    std::vector<char> seen(s.size(), 0);
    for (int v : s) {
        if (v < 0 || static_cast<std::size_t>(v) >= s.size()) return false;
        if (seen[static_cast<std::size_t>(v)]) return false;
        seen[static_cast<std::size_t>(v)] = 1;
    }
    return true;
}

std::pair<ValueString, ValueString> kpoint_crossover(const ValueString& p1, const ValueString& p2,
                                                     int k, Rng& rng) {
    check_equal_lengths(p1.size(), p2.size());
    const std::size_t n = p1.size();
    if (k < 1 || static_cast<std::size_t>(k) >= n)
        throw std::invalid_argument("cut count must be in [1, length)");

    // k distinct cut points in [1, n), sorted.
    std::vector<std::size_t> cuts;
    cuts.reserve(static_cast<std::size_t>(k));
    while (cuts.size() < static_cast<std::size_t>(k)) {
        std::size_t c = 1 + rng.uniform_index(n - 1);
        if (std::find(cuts.begin(), cuts.end(), c) == cuts.end()) cuts.push_back(c);
    }
    std::sort(cuts.begin(), cuts.end());

    ValueString c1 = p1, c2 = p2;
    bool swapped = false;
    std::size_t cut_idx = 0;
    for (std::size_t i = 0; i < n; ++i) {
        if (cut_idx < cuts.size() && i == cuts[cut_idx]) {
            swapped = !swapped;
            ++cut_idx;
        }
        if (swapped) {
            c1[i] = p2[i];
            c2[i] = p1[i];
        }
    }
    return {std::move(c1), std::move(c2)};
}

ValueString param_uniform_crossover(std::span<const ValueString* const> parents, double p,
                                    Rng& rng) {
    if (parents.size() < 2 || parents.size() > 4)
        throw std::invalid_argument("parameterised uniform crossover takes 2 to 4 parents");
    if (p < 0.5 || p > 1.0) throw std::invalid_argument("first-parent bias must be in [0.5, 1]");
    const std::size_t n = parents[0]->size();
    for (const ValueString* par : parents) check_equal_lengths(n, par->size());

    ValueString child(n);
    for (std::size_t i = 0; i < n; ++i) {
        if (parents.size() == 2) {
            child[i] = rng.bernoulli(p) ? (*parents[0])[i] : (*parents[1])[i];
        } else if (rng.bernoulli(p)) {
            child[i] = (*parents[0])[i];
        } else {
            std::size_t other = 1 + rng.uniform_index(parents.size() - 1);
            child[i] = (*parents[other])[i];
        }
    }
    return child;
}

ValueString fixed_point_crossover(std::span<const SegmentPart> parts) {
    if (parts.empty()) throw std::invalid_argument("no segments given");
    const std::size_t n = parts[0].source->size();

    std::vector<char> covered(n, 0);
    ValueString child(n, 0);
    for (const SegmentPart& part : parts) {
        check_equal_lengths(n, part.source->size());
        if (part.begin > part.end || part.end > n)
            throw std::invalid_argument("segment range out of bounds");
        for (std::size_t i = part.begin; i < part.end; ++i) {
            if (covered[i]) throw std::invalid_argument("segments overlap");
            covered[i] = 1;
            child[i] = (*part.source)[i];
        }
    }
    if (std::find(covered.begin(), covered.end(), 0) != covered.end())
        throw std::invalid_argument("segments leave a gap");
    return child;
}

std::pair<PermutationString, PermutationString> order_based_crossover(const PermutationString& p1,
                                                                      const PermutationString& p2,
                                                                      std::size_t cut1,
                                                                      std::size_t cut2) {
    check_equal_lengths(p1.size(), p2.size());
    const std::size_t n = p1.size();
    if (cut1 >= cut2 || cut2 > n) throw std::invalid_argument("invalid cut points");

    auto make_child = [&](const PermutationString& keeper, const PermutationString& donor) {
        PermutationString child(n, -1);
        std::vector<char> used(n, 0);
        for (std::size_t i = cut1; i < cut2; ++i) {
            child[i] = keeper[i];
            used[static_cast<std::size_t>(keeper[i])] = 1;
        }
        fill_missing_in_order(child, used, donor);
        return child;
    };
    return {make_child(p1, p2), make_child(p2, p1)};
}

std::pair<PermutationString, PermutationString> c1_crossover(const PermutationString& p1,
                                                             const PermutationString& p2,
                                                             std::size_t cut) {
    check_equal_lengths(p1.size(), p2.size());
    const std::size_t n = p1.size();
    if (cut == 0 || cut >= n) throw std::invalid_argument("cut must be in (0, length)");

    auto make_child = [&](const PermutationString& keeper, const PermutationString& donor) {
        PermutationString child(n, -1);
        std::vector<char> used(n, 0);
        for (std::size_t i = 0; i < cut; ++i) {
            child[i] = keeper[i];
            used[static_cast<std::size_t>(keeper[i])] = 1;
        }
        fill_missing_in_order(child, used, donor);
        return child;
    };
    return {make_child(p1, p2), make_child(p2, p1)};
}

std::pair<PermutationString, PermutationString> pmx_crossover(const PermutationString& p1,
                                                              const PermutationString& p2,
                                                              std::size_t cut1, std::size_t cut2) {
    check_equal_lengths(p1.size(), p2.size());
    const std::size_t n = p1.size();
    if (cut1 >= cut2 || cut2 > n) throw std::invalid_argument("invalid cut points");

    auto make_child = [&](const PermutationString& base, const PermutationString& other) {
        PermutationString child = base;
        std::vector<char> in_section(n, 0);
        for (std::size_t i = cut1; i < cut2; ++i) {
            child[i] = other[i];
            in_section[static_cast<std::size_t>(other[i])] = 1;
        }
        // Positional mapping of the exchanged section: other[i] -> base[i].
        // Duplicates outside the section chase the mapping until they leave it.
        std::vector<int> mapped(n, -1);
        for (std::size_t i = cut1; i < cut2; ++i)
            mapped[static_cast<std::size_t>(other[i])] = base[i];
        for (std::size_t i = 0; i < n; ++i) {
            if (i >= cut1 && i < cut2) continue;
            int v = child[i];
            while (in_section[static_cast<std::size_t>(v)])
                v = mapped[static_cast<std::size_t>(v)];
            child[i] = v;
        }
        return child;
    };
    return {make_child(p1, p2), make_child(p2, p1)};
}

std::pair<PermutationString, PermutationString> pux_crossover_with_template(
    const PermutationString& p1, const PermutationString& p2,
    std::span<const std::uint8_t> tmpl) {
    check_equal_lengths(p1.size(), p2.size());
    check_equal_lengths(p1.size(), tmpl.size());
    const std::size_t n = p1.size();

    auto make_child = [&](const PermutationString& keeper, const PermutationString& donor,
                          std::uint8_t keep_bit) {
        PermutationString child(n, -1);
        std::vector<char> used(n, 0);
        for (std::size_t i = 0; i < n; ++i) {
            if (tmpl[i] == keep_bit) {
                child[i] = keeper[i];
                used[static_cast<std::size_t>(keeper[i])] = 1;
            }
        }
        fill_missing_in_order(child, used, donor);
        return child;
    };
    return {make_child(p1, p2, 1), make_child(p2, p1, 0)};
}

std::pair<PermutationString, PermutationString> pux_crossover(const PermutationString& p1,
                                                              const PermutationString& p2,
                                                              double p, Rng& rng) {
    if (p < 0.5 || p > 1.0) throw std::invalid_argument("template bias must be in [0.5, 1]");
    std::vector<std::uint8_t> tmpl(p1.size());
    for (std::uint8_t& bit : tmpl) bit = rng.bernoulli(p) ? 1 : 0;
    return pux_crossover_with_template(p1, p2, tmpl);
}

ValueString single_gene_mutation(const ValueString& s, double rate,
                                 std::span<const std::vector<int>> domains, Rng& rng) {
    if (rate < 0.0 || rate > 1.0) throw std::invalid_argument("mutation rate must be in [0, 1]");
    check_equal_lengths(s.size(), domains.size());
    ValueString out = s;
    for (std::size_t i = 0; i < out.size(); ++i) {
        if (domains[i].empty()) throw std::invalid_argument("empty domain");
        if (rng.bernoulli(rate)) out[i] = domains[i][rng.uniform_index(domains[i].size())];
    }
    return out;
}

PermutationString swap_mutation(const PermutationString& s, double rate, Rng& rng,
                                std::size_t max_partner_exclusive) {
    if (rate < 0.0 || rate > 1.0) throw std::invalid_argument("mutation rate must be in [0, 1]");
    PermutationString out = s;
    const std::size_t n = out.size();
    if (n < 2) return out;
    const std::size_t partner_bound =
        max_partner_exclusive > 0 ? std::min(max_partner_exclusive, n) : n;
    for (std::size_t i = 0; i < n; ++i) {
        if (!rng.bernoulli(rate)) continue;
        std::size_t j = rng.uniform_index(partner_bound);
        std::swap(out[i], out[j]);
    }
    return out;
}

PermutationString scramble_mutation(const PermutationString& s, double rate, Rng& rng) {
    if (rate < 0.0 || rate > 1.0) throw std::invalid_argument("mutation rate must be in [0, 1]");
    PermutationString out = s;
    if (out.size() < 2 || !rng.bernoulli(rate)) return out;
    std::size_t a = rng.uniform_index(out.size());
    std::size_t b = rng.uniform_index(out.size());
    if (a > b) std::swap(a, b);
    rng.shuffle(std::span<int>(out.data() + a, b - a + 1));
    return out;
}

AdaptiveGenes init_adaptive(const AdaptiveRanges& ranges, Rng& rng) {
    AdaptiveGenes genes;
    genes.decoder_weights.resize(ranges.weight_count);
    for (double& w : genes.decoder_weights) w = rng.uniform_real(ranges.weight_lo, ranges.weight_hi);
    if (ranges.tag_enabled) {
        switch (rng.uniform_index(3)) {
            case 0: genes.crossover_tag = CrossoverTag::C1; break;
            case 1: genes.crossover_tag = CrossoverTag::PMX; break;
            default: genes.crossover_tag = CrossoverTag::PUX66; break;
        }
    }
    if (ranges.rate_enabled) genes.mutation_rate = rng.uniform_real(ranges.rate_lo, ranges.rate_hi);
    return genes;
}

AdaptiveGenes inherit_adaptive(std::span<const RankedAdaptive> parents,
                               WeightInheritance strategy, Rng& rng) {
    if (parents.empty()) throw std::invalid_argument("no parents given");
    for (const RankedAdaptive& par : parents)
        if (par.genes == nullptr) throw std::invalid_argument("parent lacks adaptive genes");

    const RankedAdaptive* best = &parents[0];
    double rank_sum = 0.0;
    for (const RankedAdaptive& par : parents) {
        rank_sum += par.rank;
        if (par.rank > best->rank) best = &par;
    }

    AdaptiveGenes child;
    child.crossover_tag = best->genes->crossover_tag;

    const std::size_t weight_count = best->genes->decoder_weights.size();
    child.decoder_weights.resize(weight_count);
    for (std::size_t w = 0; w < weight_count; ++w) {
        switch (strategy) {
            case WeightInheritance::TakeRandomParent: {
                const RankedAdaptive& pick = parents[rng.uniform_index(parents.size())];
                child.decoder_weights[w] = pick.genes->decoder_weights.at(w);
                break;
            }
            case WeightInheritance::RankWeightedAverage: {
                double acc = 0.0;
                for (const RankedAdaptive& par : parents)
                    acc += par.rank * par.genes->decoder_weights.at(w);
                child.decoder_weights[w] = acc / rank_sum;
                break;
            }
            case WeightInheritance::UniformInRange: {
                double lo = parents[0].genes->decoder_weights.at(w);
                double hi = lo;
                for (const RankedAdaptive& par : parents) {
                    lo = std::min(lo, par.genes->decoder_weights.at(w));
                    hi = std::max(hi, par.genes->decoder_weights.at(w));
                }
                child.decoder_weights[w] = rng.uniform_real(lo, hi);
                break;
            }
        }
    }

    double rate_acc = 0.0;
    for (const RankedAdaptive& par : parents) rate_acc += par.rank * par.genes->mutation_rate;
    child.mutation_rate = rate_acc / rank_sum;
    return child;
}

}  // namespace mcga::ops
