#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace mcga::mall {

struct MallInstance {
    std::string name;
    int locations = 0;   // N
    int area_count = 0;  // A
    int shop_types = 0;  // S
    std::vector<int> area_of;  // per location, areas are contiguous runs
    std::vector<std::vector<int>> groups;  // per group: member shop types
    std::vector<int> min_count, ideal_count, max_count;  // a_j, c_j, b_j per type
    int max_small = 0, max_medium = 0, max_large = 0;    // m_S, m_M, m_L
    std::vector<double> attractiveness;            // r_k per area, in [5, 25]
    std::vector<std::vector<double>> fixed_rent;   // [type][area], in [1000, 3000]
    double bonus_base = 10.0;    // group factor with no complete group
    double bonus_factor = 1.2;   // multiplicative per complete group (12, 14.4)
    std::optional<std::vector<double>> size_efficiency_override;

    // derived
    std::vector<std::vector<int>> groups_of_type;       // per type: group ids
    std::vector<std::pair<int, int>> area_range;        // [begin, end) per area

    void finalize();
    double group_bonus(int complete_groups) const {
        double b = bonus_base;
        for (int g = 0; g < complete_groups; ++g) b *= bonus_factor;
        return b;
    }
};

// One shop type per location.
using Layout = std::vector<int>;

struct LayoutStats {
    std::vector<std::vector<int>> per_area;  // n_jk: [type][area]
    std::vector<int> totals;                 // t_j per type
    int n_small = 0, n_medium = 0, n_large = 0;
    std::vector<std::vector<char>> group_complete;  // [area][group]
};

struct MallEval {
    double rent = 0.0;
    int violation = 0;
    bool feasible = false;
};

}  // namespace mcga::mall
