#pragma once

#include <cstdint>

#include "mcga/mall/types.hpp"

namespace mcga::mall {

// Shops of one type in one area decompose into large (3 locations), medium
// (2) and small (1) shops: n div 3 large, then one medium or small from the
// remainder.
void size_decomposition(int n, int& large, int& medium, int& small);

// Location-weighted mean of the unit factors 13 (large), 11.5 (medium) and
// 10 (small); 0 for an empty count.
double size_efficiency(int n);
double size_efficiency(int n, const MallInstance& instance);

// max(10 - |total - ideal|, 0): ten or more shops away from the ideal count
// zeroes the location's revenue.
double count_efficiency(int total, int ideal);

LayoutStats layout_stats(const Layout& layout, const MallInstance& instance);

// rent = sum over locations of r_k * B(complete groups) * E(n_jk) * I(t_j, c_j)
// plus the fixed type/area rent; violation counts the per-type bounds and the
// size-cap overruns.
MallEval evaluate_layout(const Layout& layout, const MallInstance& instance);

// Fitness works on the thousands scale the penalty weights are tuned for:
// one violation unit at w = 30 weighs like 30k of rent.
inline double fitness_of(const MallEval& e, double w) {
    return -(e.rent / 1000.0 - w * e.violation);
}

// Rent of one area ignoring the count factor and all constraints; used as the
// pseudo fitness of area sub-populations.
double area_pseudo_fitness(const Layout& layout, int area, const MallInstance& instance);

// Optimistic yardstick: every location as part of a large shop in a complete
// group at the ideal count, average attractiveness 15, maximum fixed rent.
double upper_bound(const MallInstance& instance);

void validate_instance(const MallInstance& instance);

}  // namespace mcga::mall
