#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "mcga/mall/solvers.hpp"
#include "mcga/nurse/direct.hpp"
#include "mcga/nurse/indirect.hpp"

namespace mcga::harness {

struct GeneratorSpec {
    // nurse: variant + count (+ nurses); mall: set + count (+ linked)
    std::string variant = "structured";
    int set_id = 4;
    int count = 10;
    int nurses = 25;
    bool linked = false;
};

struct ExperimentConfig {
    std::string problem = "nurse";  // "nurse" | "mall"
    std::vector<std::string> instance_paths;
    std::optional<GeneratorSpec> generate;
    std::string algo = "direct";
    int runs_per_instance = 20;
    std::uint64_t base_seed = 1;
    std::string out_dir;
    bool convergence = false;

    nurse::DirectNurseOptions nurse_direct;
    nurse::IndirectNurseOptions nurse_indirect;
    mall::MallOptions mall;
};

// One row of runs.csv.
struct RunRecord {
    std::string instance;
    int run = 0;
    std::uint64_t seed = 0;
    double best_objective = 0.0;
    bool feasible = false;
    int generations = 0;
    double seconds = 0.0;
    int invariant_violations = 0;
    std::uint64_t initial_population_hash = 0;
    std::vector<std::pair<double, double>> convergence;
};

struct AggregateStats {
    double feasibility = 0.0;     // mean feasible flag over (instance, run)
    double cost_or_rent = 0.0;    // censored best-per-instance average
    double uncensored_mean = 0.0; // censor-filled mean over all instances
    int instances = 0;
    int solved_instances = 0;
    double mean_seconds = 0.0;
    std::vector<std::pair<std::string, double>> best_per_instance;  // censored
};

// Per-instance best feasible values averaged over the instances with at
// least one feasible solution; unsolved instances substitute the censor
// value (100 for rosters, 0 for mall rents) into the numerator only.
AggregateStats aggregate(const std::vector<RunRecord>& records, bool maximize, double censor);

// Stable per-run seed: adding instances or runs never perturbs other seeds.
std::uint64_t derive_seed(std::uint64_t base_seed, const std::string& instance_name, int run);

struct ExperimentResult {
    AggregateStats stats;
    std::vector<RunRecord> records;
};

ExperimentResult run_experiment(const ExperimentConfig& cfg);

// summary.csv, runs.csv and optionally convergence.csv under `dir`.
void emit_outputs(const ExperimentConfig& cfg, const ExperimentResult& result,
                  const std::string& dir);

ExperimentConfig config_from_json(const std::string& text);

// Applies the solver-specific sections of a JSON document (the "nurse" /
// "mall" / "ga" keys) on top of an existing config; used for flag overrides.
void apply_solver_overrides(ExperimentConfig& cfg, const std::string& json_text);

}  // namespace mcga::harness
