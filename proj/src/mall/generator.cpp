#include <algorithm>
#include <numeric>
#include <stdexcept>

#include "mcga/mall/domain.hpp"
#include "mcga/mall/generator.hpp"
#include "mcga/rng.hpp"

namespace mcga::mall {

namespace {

struct SetParams {
    int locations;
    int areas;
    int types;
    int groups;
    bool tight_size;
    int count_mode;  // 0 loose, 1 average, 2 tight
};

SetParams set_params(int set_id) {
    switch (set_id) {
        case 3: return {100, 5, 50, 8, false, 0};
        case 4: return {100, 5, 20, 5, false, 1};
        case 5: return {100, 5, 20, 5, false, 2};
        case 6: return {100, 5, 20, 5, true, 1};
        case 7: return {100, 5, 20, 5, true, 2};
        default: throw std::invalid_argument("data set id must be 3..7");
    }
}

std::vector<int> partition_locations(int n, int areas, Rng& rng) {
    // area sizes between 5 and 30
    for (int attempt = 0; attempt < 1000; ++attempt) {
        std::vector<int> sizes(static_cast<std::size_t>(areas));
        int used = 0;
        bool ok = true;
        for (int k = 0; k + 1 < areas; ++k) {
            int remaining_areas = areas - k - 1;
            int lo = std::max(5, n - used - 30 * remaining_areas);
            int hi = std::min(30, n - used - 5 * remaining_areas);
            if (lo > hi) {
                ok = false;
                break;
            }
            sizes[static_cast<std::size_t>(k)] = static_cast<int>(rng.uniform_int(lo, hi));
            used += sizes[static_cast<std::size_t>(k)];
        }
        int last = n - used;
        if (!ok || last < 5 || last > 30) continue;
        sizes[static_cast<std::size_t>(areas - 1)] = last;
        return sizes;
    }
    throw std::runtime_error("cannot partition locations into areas");
}

std::vector<std::vector<int>> sample_groups(int types, int group_count, Rng& rng) {
    for (int attempt = 0; attempt < 1000; ++attempt) {
        std::vector<std::vector<int>> groups(static_cast<std::size_t>(group_count));
        std::vector<int> memberships(static_cast<std::size_t>(types), 0);
        for (int j = 0; j < types; ++j) {
            double u = rng.uniform_real();
            int n_groups = u < 0.2 ? 0 : u < 0.8 ? 1 : 2;
            std::vector<int> ids(static_cast<std::size_t>(group_count));
            std::iota(ids.begin(), ids.end(), 0);
            rng.shuffle(ids);
            for (int g = 0; g < n_groups; ++g) {
                groups[static_cast<std::size_t>(ids[static_cast<std::size_t>(g)])].push_back(j);
                ++memberships[static_cast<std::size_t>(j)];
            }
        }
        // top up undersized groups with types that still have capacity
        for (auto& group : groups) {
            std::vector<int> candidates;
            for (int j = 0; j < types; ++j) {
                if (memberships[static_cast<std::size_t>(j)] >= 2) continue;
                if (std::find(group.begin(), group.end(), j) != group.end()) continue;
                candidates.push_back(j);
            }
            rng.shuffle(candidates);
            while (group.size() < 3 && !candidates.empty()) {
                group.push_back(candidates.back());
                ++memberships[static_cast<std::size_t>(candidates.back())];
                candidates.pop_back();
            }
            while (group.size() > 10) {
                --memberships[static_cast<std::size_t>(group.back())];
                group.pop_back();
            }
        }
        bool ok = true;
        for (const auto& group : groups) ok = ok && group.size() >= 3 && group.size() <= 10;
        if (ok) return groups;
    }
    throw std::runtime_error("cannot sample consistent shop groups");
}

void sample_counts(MallInstance& inst, int count_mode, Rng& rng) {
    const int types = inst.shop_types;
    inst.ideal_count.resize(static_cast<std::size_t>(types));
    inst.min_count.assign(static_cast<std::size_t>(types), 0);
    inst.max_count.resize(static_cast<std::size_t>(types));

    for (int attempt = 0; attempt < 1000; ++attempt) {
        long long ideal_sum = 0;
        for (int j = 0; j < types; ++j) {
            inst.ideal_count[static_cast<std::size_t>(j)] = static_cast<int>(rng.uniform_int(1, 10));
            ideal_sum += inst.ideal_count[static_cast<std::size_t>(j)];
        }
        for (int j = 0; j < types; ++j)
            inst.max_count[static_cast<std::size_t>(j)] = static_cast<int>(
                rng.uniform_int(inst.ideal_count[static_cast<std::size_t>(j)], 10));
        long long max_sum = std::accumulate(inst.max_count.begin(), inst.max_count.end(), 0LL);
        while (max_sum < inst.locations) {
            std::size_t j = rng.uniform_index(static_cast<std::size_t>(types));
            if (inst.max_count[j] < 10) {
                ++inst.max_count[j];
                ++max_sum;
            }
        }

        if (count_mode == 0) {
            std::fill(inst.min_count.begin(), inst.min_count.end(), 0);
            return;
        }
        double lo = count_mode == 1 ? 0.60 : 0.95;
        double hi = count_mode == 1 ? 0.80 : 0.98;
        int target = static_cast<int>(rng.uniform_int(
            static_cast<std::int64_t>(lo * inst.locations),
            static_cast<std::int64_t>(hi * inst.locations)));
        if (ideal_sum < target) continue;  // resample ideals

        for (int j = 0; j < types; ++j)
            inst.min_count[static_cast<std::size_t>(j)] = static_cast<int>(
                rng.uniform_int(0, inst.ideal_count[static_cast<std::size_t>(j)]));
        long long min_sum = std::accumulate(inst.min_count.begin(), inst.min_count.end(), 0LL);
        int guard = 0;
        while (min_sum != target && ++guard < 100000) {
            std::size_t j = rng.uniform_index(static_cast<std::size_t>(types));
            if (min_sum < target &&
                inst.min_count[j] < inst.ideal_count[j]) {
                ++inst.min_count[j];
                ++min_sum;
            } else if (min_sum > target && inst.min_count[j] > 0) {
                --inst.min_count[j];
                --min_sum;
            }
        }
        if (min_sum == target) return;
    }
    throw std::runtime_error("cannot sample consistent shop counts");
}

void sample_rents(MallInstance& inst, Rng& rng) {
    const int areas = inst.area_count;
    inst.attractiveness.resize(static_cast<std::size_t>(areas));
    for (int k = 0; k < areas; ++k) {
        double bias = areas > 1 ? 4.0 * k / (areas - 1) : 0.0;
        double r = rng.uniform_real(5.0, 21.0) + bias;
        inst.attractiveness[static_cast<std::size_t>(k)] =
            std::clamp(std::round(r), 5.0, 25.0);
    }
    inst.fixed_rent.assign(static_cast<std::size_t>(inst.shop_types),
                           std::vector<double>(static_cast<std::size_t>(areas)));
    for (int j = 0; j < inst.shop_types; ++j)
        for (int k = 0; k < areas; ++k) {
            double bias = areas > 1 ? 400.0 * k / (areas - 1) : 0.0;
            double r = rng.uniform_real(1000.0, 2600.0) + bias;
            inst.fixed_rent[static_cast<std::size_t>(j)][static_cast<std::size_t>(k)] =
                std::clamp(std::round(r), 1000.0, 3000.0);
        }
}

void apply_structure(MallInstance& inst, const SetParams& params, Rng& rng) {
    inst.locations = params.locations;
    inst.area_count = params.areas;
    inst.shop_types = params.types;
    std::vector<int> sizes = partition_locations(params.locations, params.areas, rng);
    inst.area_of.clear();
    for (int k = 0; k < params.areas; ++k)
        inst.area_of.insert(inst.area_of.end(), static_cast<std::size_t>(sizes[static_cast<std::size_t>(k)]), k);
    inst.groups = sample_groups(params.types, params.groups, rng);
    if (params.tight_size) {
        inst.max_small = 6;
        inst.max_medium = 17;
        inst.max_large = 22;
    } else {
        inst.max_small = inst.max_medium = inst.max_large = params.locations;
    }
}

}  // namespace

MallInstance generate_mall_instance(int set_id, std::uint64_t seed) {
    SetParams params = set_params(set_id);
    Rng rng(seed);
    MallInstance inst;
    inst.name = "mall-set" + std::to_string(set_id) + "-" + std::to_string(seed);
    apply_structure(inst, params, rng);
    sample_counts(inst, params.count_mode, rng);
    sample_rents(inst, rng);
    inst.finalize();
    validate_instance(inst);
    return inst;
}

std::vector<MallInstance> generate_linked_instances(std::uint64_t seed) {
    Rng rng(seed);
    // shared core from set 4's dimensions
    SetParams base = set_params(4);
    MallInstance core;
    core.name = "mall-linked-" + std::to_string(seed);
    apply_structure(core, base, rng);
    sample_counts(core, 2, rng);  // tight minima: the set-7 requirements
    sample_rents(core, rng);

    std::vector<int> tight_min = core.min_count;
    // average minima: shrink the tight ones to a 60-80% target
    std::vector<int> avg_min = tight_min;
    long long sum = std::accumulate(avg_min.begin(), avg_min.end(), 0LL);
    long long target = static_cast<long long>(rng.uniform_int(
        static_cast<std::int64_t>(0.60 * core.locations),
        static_cast<std::int64_t>(0.80 * core.locations)));
    int guard = 0;
    while (sum > target && ++guard < 100000) {
        std::size_t j = rng.uniform_index(avg_min.size());
        if (avg_min[j] > 0) {
            --avg_min[j];
            --sum;
        }
    }

    std::vector<MallInstance> out;
    for (int set_id = 4; set_id <= 7; ++set_id) {
        SetParams params = set_params(set_id);
        MallInstance inst = core;
        inst.name = "mall-set" + std::to_string(set_id) + "-linked-" + std::to_string(seed);
        inst.min_count = params.count_mode == 2 ? tight_min : avg_min;
        if (params.tight_size) {
            inst.max_small = 6;
            inst.max_medium = 17;
            inst.max_large = 22;
        } else {
            inst.max_small = inst.max_medium = inst.max_large = inst.locations;
        }
        inst.finalize();
        validate_instance(inst);
        out.push_back(std::move(inst));
    }
    return out;
}

MallInstance generate_micro_mall_instance(std::uint64_t seed) {
    Rng rng(seed);
    MallInstance inst;
    inst.name = "mall-micro-" + std::to_string(seed);
    inst.locations = 8;
    inst.area_count = 2;
    inst.shop_types = 3;
    int first_area = static_cast<int>(rng.uniform_int(3, 5));
    inst.area_of.assign(static_cast<std::size_t>(first_area), 0);
    inst.area_of.insert(inst.area_of.end(), static_cast<std::size_t>(8 - first_area), 1);
    inst.groups = {{0, 1, 2}};
    inst.max_small = inst.max_medium = inst.max_large = 8;
    inst.ideal_count.resize(3);
    inst.min_count.resize(3);
    inst.max_count.resize(3);
    for (int j = 0; j < 3; ++j) {
        inst.ideal_count[static_cast<std::size_t>(j)] = static_cast<int>(rng.uniform_int(1, 4));
        inst.min_count[static_cast<std::size_t>(j)] = static_cast<int>(
            rng.uniform_int(0, std::min(inst.ideal_count[static_cast<std::size_t>(j)], 2)));
        inst.max_count[static_cast<std::size_t>(j)] = static_cast<int>(
            rng.uniform_int(std::max(inst.ideal_count[static_cast<std::size_t>(j)], 3), 8));
    }
    while (std::accumulate(inst.max_count.begin(), inst.max_count.end(), 0) < 8)
        ++inst.max_count[rng.uniform_index(3)];
    while (std::accumulate(inst.min_count.begin(), inst.min_count.end(), 0) > 6) {
        std::size_t j = rng.uniform_index(3);
        if (inst.min_count[j] > 0) --inst.min_count[j];
    }
    sample_rents(inst, rng);
    inst.finalize();
    validate_instance(inst);
    return inst;
}

}  // namespace mcga::mall
