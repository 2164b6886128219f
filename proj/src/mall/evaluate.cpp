#include <algorithm>
#include <stdexcept>

#include "mcga/mall/domain.hpp"

namespace mcga::mall {

void MallInstance::finalize() {
    groups_of_type.assign(static_cast<std::size_t>(shop_types), {});
    for (std::size_t l = 0; l < groups.size(); ++l)
        for (int j : groups[l]) groups_of_type[static_cast<std::size_t>(j)].push_back(static_cast<int>(l));
    area_range.assign(static_cast<std::size_t>(area_count), {0, 0});
    for (int k = 0; k < area_count; ++k) {
        int begin = -1, end = -1;
        for (int i = 0; i < locations; ++i) {
            if (area_of[static_cast<std::size_t>(i)] != k) continue;
            if (begin < 0) begin = i;
            end = i + 1;
        }
        area_range[static_cast<std::size_t>(k)] = {begin < 0 ? 0 : begin, end < 0 ? 0 : end};
    }
}

void size_decomposition(int n, int& large, int& medium, int& small) {
    large = n / 3;
    medium = n % 3 == 2 ? 1 : 0;
    small = n % 3 == 1 ? 1 : 0;
}

double size_efficiency(int n) {
    if (n <= 0) return 0.0;
    int large = 0, medium = 0, small = 0;
    size_decomposition(n, large, medium, small);
    return (large * 3 * 13.0 + medium * 2 * 11.5 + small * 10.0) / n;
}

double size_efficiency(int n, const MallInstance& instance) {
    if (instance.size_efficiency_override) {
        const auto& table = *instance.size_efficiency_override;
        if (n >= 0 && static_cast<std::size_t>(n) < table.size())
            return table[static_cast<std::size_t>(n)];
    }
    return size_efficiency(n);
}

double count_efficiency(int total, int ideal) {
    return std::max(10.0 - std::abs(total - ideal), 0.0);
}

LayoutStats layout_stats(const Layout& layout, const MallInstance& instance) {
    LayoutStats stats;
    stats.per_area.assign(static_cast<std::size_t>(instance.shop_types),
                          std::vector<int>(static_cast<std::size_t>(instance.area_count), 0));
    stats.totals.assign(static_cast<std::size_t>(instance.shop_types), 0);
    for (int i = 0; i < instance.locations; ++i) {
        int j = layout[static_cast<std::size_t>(i)];
        int k = instance.area_of[static_cast<std::size_t>(i)];
        ++stats.per_area[static_cast<std::size_t>(j)][static_cast<std::size_t>(k)];
        ++stats.totals[static_cast<std::size_t>(j)];
    }
    for (int j = 0; j < instance.shop_types; ++j)
        for (int k = 0; k < instance.area_count; ++k) {
            int large = 0, medium = 0, small = 0;
            size_decomposition(stats.per_area[static_cast<std::size_t>(j)][static_cast<std::size_t>(k)],
                               large, medium, small);
            stats.n_large += large;
            stats.n_medium += medium;
            stats.n_small += small;
        }
    stats.group_complete.assign(static_cast<std::size_t>(instance.area_count),
                                std::vector<char>(instance.groups.size(), 0));
    for (std::size_t l = 0; l < instance.groups.size(); ++l) {
        for (int k = 0; k < instance.area_count; ++k) {
            bool complete = !instance.groups[l].empty();
            for (int member : instance.groups[l])
                if (stats.per_area[static_cast<std::size_t>(member)][static_cast<std::size_t>(k)] == 0) {
                    complete = false;
                    break;
                }
            stats.group_complete[static_cast<std::size_t>(k)][l] = complete ? 1 : 0;
        }
    }
    return stats;
}

MallEval evaluate_layout(const Layout& layout, const MallInstance& instance) {
    if (layout.size() != static_cast<std::size_t>(instance.locations))
        throw std::invalid_argument("layout length does not match location count");
    LayoutStats stats = layout_stats(layout, instance);

    MallEval eval;
    for (int i = 0; i < instance.locations; ++i) {
        int j = layout[static_cast<std::size_t>(i)];
        int k = instance.area_of[static_cast<std::size_t>(i)];
        int complete = 0;
        for (int l : instance.groups_of_type[static_cast<std::size_t>(j)])
            if (stats.group_complete[static_cast<std::size_t>(k)][static_cast<std::size_t>(l)]) ++complete;
        double revenue =
            instance.attractiveness[static_cast<std::size_t>(k)] * instance.group_bonus(complete) *
            size_efficiency(stats.per_area[static_cast<std::size_t>(j)][static_cast<std::size_t>(k)],
                            instance) *
            count_efficiency(stats.totals[static_cast<std::size_t>(j)],
                             instance.ideal_count[static_cast<std::size_t>(j)]);
        eval.rent += revenue + instance.fixed_rent[static_cast<std::size_t>(j)][static_cast<std::size_t>(k)];
    }
    for (int j = 0; j < instance.shop_types; ++j) {
        eval.violation += std::max(instance.min_count[static_cast<std::size_t>(j)] -
                                       stats.totals[static_cast<std::size_t>(j)],
                                   0);
        eval.violation += std::max(stats.totals[static_cast<std::size_t>(j)] -
                                       instance.max_count[static_cast<std::size_t>(j)],
                                   0);
    }
    eval.violation += std::max(stats.n_large - instance.max_large, 0);
    eval.violation += std::max(stats.n_medium - instance.max_medium, 0);
    eval.violation += std::max(stats.n_small - instance.max_small, 0);
    eval.feasible = eval.violation == 0;
    return eval;
}

double area_pseudo_fitness(const Layout& layout, int area, const MallInstance& instance) {
    LayoutStats stats = layout_stats(layout, instance);
    double total = 0.0;
    for (int i = 0; i < instance.locations; ++i) {
        if (instance.area_of[static_cast<std::size_t>(i)] != area) continue;
        int j = layout[static_cast<std::size_t>(i)];
        int complete = 0;
        for (int l : instance.groups_of_type[static_cast<std::size_t>(j)])
            if (stats.group_complete[static_cast<std::size_t>(area)][static_cast<std::size_t>(l)])
                ++complete;
        total += instance.attractiveness[static_cast<std::size_t>(area)] *
                     instance.group_bonus(complete) *
                     size_efficiency(
                         stats.per_area[static_cast<std::size_t>(j)][static_cast<std::size_t>(area)],
                         instance) +
                 instance.fixed_rent[static_cast<std::size_t>(j)][static_cast<std::size_t>(area)];
    }
    return total;
}

double upper_bound(const MallInstance& instance) {
    return instance.locations * (12.0 * 13.0 * 10.0 * 15.0 + 3000.0);
}

void validate_instance(const MallInstance& instance) {
    auto fail = [](const std::string& what) { throw std::invalid_argument(what); };
    if (instance.locations <= 0 || instance.area_count <= 0 || instance.shop_types <= 0)
        fail("dimensions must be positive");
    if (instance.area_of.size() != static_cast<std::size_t>(instance.locations))
        fail("area_of must list one area per location");
    std::vector<int> area_sizes(static_cast<std::size_t>(instance.area_count), 0);
    for (int a : instance.area_of) {
        if (a < 0 || a >= instance.area_count) fail("location assigned to unknown area");
        ++area_sizes[static_cast<std::size_t>(a)];
    }
    for (int size : area_sizes)
        if (size == 0) fail("empty area");
    if (instance.min_count.size() != static_cast<std::size_t>(instance.shop_types) ||
        instance.ideal_count.size() != static_cast<std::size_t>(instance.shop_types) ||
        instance.max_count.size() != static_cast<std::size_t>(instance.shop_types))
        fail("per-type counts must cover every shop type");
    long long max_sum = 0;
    for (int j = 0; j < instance.shop_types; ++j) {
        int a = instance.min_count[static_cast<std::size_t>(j)];
        int c = instance.ideal_count[static_cast<std::size_t>(j)];
        int b = instance.max_count[static_cast<std::size_t>(j)];
        if (!(0 <= a && a <= c && c <= b)) fail("per-type counts must satisfy min <= ideal <= max");
        max_sum += b;
    }
    if (max_sum < instance.locations) fail("sum of maxima below the location count");
    for (const auto& group : instance.groups) {
        if (group.size() < 3 || group.size() > 10) fail("groups must have 3 to 10 members");
        for (int j : group)
            if (j < 0 || j >= instance.shop_types) fail("group member out of range");
    }
    for (int j = 0; j < instance.shop_types; ++j)
        if (instance.groups_of_type[static_cast<std::size_t>(j)].size() > 2)
            fail("shop types belong to at most two groups");
    if (instance.attractiveness.size() != static_cast<std::size_t>(instance.area_count))
        fail("attractiveness must cover every area");
    for (double r : instance.attractiveness)
        if (r < 5.0 || r > 25.0) fail("attractiveness outside [5, 25]");
    if (instance.fixed_rent.size() != static_cast<std::size_t>(instance.shop_types))
        fail("fixed rent must cover every shop type");
    for (const auto& row : instance.fixed_rent) {
        if (row.size() != static_cast<std::size_t>(instance.area_count))
            fail("fixed rent rows must cover every area");
        for (double r : row)
            if (r < 1000.0 || r > 3000.0) fail("fixed rent outside [1000, 3000]");
    }
}

}  // namespace mcga::mall
