#include <algorithm>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "mcga/hash.hpp"
#include "mcga/harness/experiment.hpp"
#include "mcga/mall/domain.hpp"
#include "mcga/mall/generator.hpp"
#include "mcga/mall/io.hpp"
#include "mcga/nurse/generator.hpp"
#include "mcga/nurse/io.hpp"

namespace mcga::harness {

namespace {

using nlohmann::json;

void apply_ga_overrides(ga::GaConfig& cfg, const json& j) {
    if (j.contains("population")) cfg.population_size = j["population"].get<int>();
    if (j.contains("elite")) cfg.elite_fraction = j["elite"].get<double>();
    if (j.contains("stagnation")) cfg.stop_stagnation = j["stagnation"].get<int>();
    if (j.contains("mutation")) cfg.mutation_rate = j["mutation"].get<double>();
    if (j.contains("parents")) cfg.parents_per_crossover = j["parents"].get<int>();
    if (j.contains("max_generations")) cfg.max_generations = j["max_generations"].get<int>();
    if (j.contains("penalty")) {
        const json& p = j["penalty"];
        if (p.contains("strategy"))
            cfg.penalty_strategy = penalty::strategy_from_name(p["strategy"].get<std::string>());
        if (p.contains("w")) cfg.penalty_params.fixed_w = p["w"].get<double>();
        if (p.contains("alpha")) cfg.penalty_params.alpha = p["alpha"].get<double>();
        if (p.contains("nu")) cfg.penalty_params.nu = p["nu"].get<double>();
        if (p.contains("high")) cfg.penalty_params.high = p["high"].get<double>();
        if (p.contains("low")) cfg.penalty_params.low = p["low"].get<double>();
    }
}

void apply_sections_impl(ExperimentConfig& cfg, const json& doc);

nurse::SearchOrderKind order_from_name(const std::string& name) {
    if (name == "lowday") return nurse::SearchOrderKind::LowDay;
    if (name == "rand") return nurse::SearchOrderKind::RandOrder;
    if (name == "biased") return nurse::SearchOrderKind::Biased;
    if (name == "cheapest") return nurse::SearchOrderKind::Cheapest;
    if (name == "randcost") return nurse::SearchOrderKind::RandCost;
    throw std::invalid_argument("unknown search order: " + name);
}

nurse::DecoderKind decoder_from_name(const std::string& name) {
    if (name == "highest") return nurse::DecoderKind::CoverHighest;
    if (name == "overall") return nurse::DecoderKind::OverallContribution;
    if (name == "combined") return nurse::DecoderKind::Combined;
    throw std::invalid_argument("unknown decoder: " + name);
}

PermCrossover perm_crossover_from_name(const std::string& name) {
    if (name == "order") return PermCrossover::OrderBased;
    if (name == "c1") return PermCrossover::C1;
    if (name == "pmx") return PermCrossover::PMX;
    if (name == "pux") return PermCrossover::PUX;
    throw std::invalid_argument("unknown permutation crossover: " + name);
}

}  // namespace

std::uint64_t derive_seed(std::uint64_t base_seed, const std::string& instance_name, int run) {
    std::uint64_t h = mix_u64(base_seed);
    h = hash_combine_u64(h, fnv1a(instance_name));
    h = hash_combine_u64(h, static_cast<std::uint64_t>(run));
    return h;
}

AggregateStats aggregate(const std::vector<RunRecord>& records, bool maximize, double censor) {
    if (records.empty()) throw std::invalid_argument("no run records to aggregate");
    AggregateStats stats;

    std::map<std::string, std::optional<double>> best;
    double feasible_runs = 0.0;
    double seconds = 0.0;
    for (const RunRecord& rec : records) {
        auto& entry = best[rec.instance];
        if (rec.feasible) {
            feasible_runs += 1.0;
            if (!entry || (maximize ? rec.best_objective > *entry : rec.best_objective < *entry))
                entry = rec.best_objective;
        } else if (!best.contains(rec.instance)) {
            best[rec.instance] = std::nullopt;
        }
        seconds += rec.seconds;
    }

    stats.instances = static_cast<int>(best.size());
    if (stats.instances == 0) throw std::invalid_argument("no instances to aggregate");
    double numerator = 0.0;
    double censored_sum = 0.0;
    for (const auto& [name, value] : best) {
        double v = value.value_or(censor);
        stats.best_per_instance.emplace_back(name, v);
        numerator += v;
        censored_sum += v;
        if (value) ++stats.solved_instances;
    }
    stats.feasibility = feasible_runs / static_cast<double>(records.size());
    stats.cost_or_rent = stats.solved_instances > 0
                             ? numerator / static_cast<double>(stats.solved_instances)
                             : censor;
    stats.uncensored_mean = censored_sum / static_cast<double>(stats.instances);
    stats.mean_seconds = seconds / static_cast<double>(records.size());
    return stats;
}

namespace {

template <typename Instance, typename Solve>
std::vector<RunRecord> run_all(const std::vector<Instance>& instances,
                               const ExperimentConfig& cfg, Solve&& solve, bool maximize,
                               std::map<std::string, std::vector<int>>& best_solutions) {
    std::vector<RunRecord> records;
    for (const Instance& instance : instances) {
        for (int run = 0; run < cfg.runs_per_instance; ++run) {
            std::uint64_t seed = derive_seed(cfg.base_seed, instance.name, run);
            SolveOutcome outcome = solve(instance, seed);
            RunRecord rec;
            rec.instance = instance.name;
            rec.run = run;
            rec.seed = seed;
            rec.best_objective = outcome.best_objective;
            rec.feasible = outcome.found_feasible;
            rec.generations = outcome.generations;
            rec.seconds = outcome.seconds;
            rec.invariant_violations = outcome.invariant_violations;
            rec.initial_population_hash = outcome.initial_population_hash;
            rec.convergence = std::move(outcome.convergence);
            if (outcome.found_feasible) {
                bool better = !best_solutions.contains(instance.name);
                if (!better) {
                    double incumbent = 0.0;
                    for (const RunRecord& old : records)
                        if (old.instance == instance.name && old.feasible)
                            incumbent = maximize ? std::max(incumbent, old.best_objective)
                                                 : (incumbent == 0.0 ? old.best_objective
                                                                     : std::min(incumbent,
                                                                                old.best_objective));
                    better = maximize ? outcome.best_objective >= incumbent
                                      : outcome.best_objective <= incumbent;
                }
                if (better) best_solutions[instance.name] = outcome.best_solution;
            }
            records.push_back(std::move(rec));
        }
    }
    return records;
}

}  // namespace

ExperimentResult run_experiment(const ExperimentConfig& cfg) {
    ExperimentResult result;
    if (cfg.problem == "nurse") {
        std::vector<nurse::NurseInstance> instances;
        for (const std::string& path : cfg.instance_paths)
            instances.push_back(nurse::load_nurse_instance(path));
        if (cfg.generate) {
            const GeneratorSpec& gen = *cfg.generate;
            nurse::GenSpec spec;
            spec.variant = nurse::cost_variant_from_name(gen.variant);
            spec.nurse_count = gen.nurses;
            for (int i = 0; i < gen.count; ++i) {
                spec.name = "nurse-" + gen.variant + "-" + std::to_string(i);
                instances.push_back(
                    nurse::generate_nurse_instance(spec, hash_combine_u64(cfg.base_seed, i)));
            }
        }
        if (instances.empty()) throw std::invalid_argument("no instances to run");
        bool indirect = cfg.algo == "indirect";
        std::map<std::string, std::vector<int>> best;
        result.records = run_all(
            instances, cfg,
            [&](const nurse::NurseInstance& inst, std::uint64_t seed) {
                if (indirect) {
                    nurse::IndirectNurseOptions opt = cfg.nurse_indirect;
                    opt.ga.record_convergence = cfg.convergence;
                    return nurse::solve_nurse_indirect(inst, opt, seed);
                }
                nurse::DirectNurseOptions opt = cfg.nurse_direct;
                opt.algo = nurse::nurse_algo_from_name(cfg.algo);
                opt.ga.record_convergence = cfg.convergence;
                return nurse::solve_nurse_direct(inst, opt, seed);
            },
            /*maximize=*/false, best);
        result.stats = aggregate(result.records, /*maximize=*/false, /*censor=*/100.0);
        if (!cfg.out_dir.empty()) {
            std::filesystem::create_directories(cfg.out_dir + "/solutions");
            for (const auto& [name, roster] : best) {
                json doc;
                doc["instance"] = name;
                doc["assignment"] = roster;
                std::ofstream out(cfg.out_dir + "/solutions/" + name + ".json");
                out << doc.dump(2) << '\n';
            }
        }
    } else if (cfg.problem == "mall") {
        std::vector<mall::MallInstance> instances;
        for (const std::string& path : cfg.instance_paths)
            instances.push_back(mall::load_mall_instance(path));
        if (cfg.generate) {
            const GeneratorSpec& gen = *cfg.generate;
            for (int i = 0; i < gen.count; ++i) {
                std::uint64_t seed = hash_combine_u64(cfg.base_seed, i);
                if (gen.linked) {
                    for (mall::MallInstance& inst : mall::generate_linked_instances(seed))
                        instances.push_back(std::move(inst));
                } else {
                    instances.push_back(mall::generate_mall_instance(gen.set_id, seed));
                }
            }
        }
        if (instances.empty()) throw std::invalid_argument("no instances to run");
        std::map<std::string, std::vector<int>> best;
        result.records = run_all(
            instances, cfg,
            [&](const mall::MallInstance& inst, std::uint64_t seed) {
                mall::MallOptions opt = cfg.mall;
                opt.algo = mall::mall_algo_from_name(cfg.algo);
                opt.ga.record_convergence = cfg.convergence;
                return mall::solve_mall(inst, opt, seed);
            },
            /*maximize=*/true, best);
        result.stats = aggregate(result.records, /*maximize=*/true, /*censor=*/0.0);
        if (!cfg.out_dir.empty()) {
            std::filesystem::create_directories(cfg.out_dir + "/solutions");
            for (const mall::MallInstance& inst : instances) {
                auto it = best.find(inst.name);
                if (it == best.end()) continue;
                mall::save_mall_solution(it->second, inst,
                                         cfg.out_dir + "/solutions/" + inst.name + ".json");
            }
        }
    } else {
        throw std::invalid_argument("unknown problem: " + cfg.problem);
    }
    return result;
}

void emit_outputs(const ExperimentConfig& cfg, const ExperimentResult& result,
                  const std::string& dir) {
    std::filesystem::create_directories(dir);
    {
        std::ofstream out(dir + "/summary.csv");
        if (!out) throw std::runtime_error("cannot write " + dir + "/summary.csv");
        out << "algorithm,problem,instances,feasibility,cost_or_rent,uncensored_mean,"
               "mean_seconds\n";
        out << cfg.algo << ',' << cfg.problem << ',' << result.stats.instances << ','
            << result.stats.feasibility << ',' << result.stats.cost_or_rent << ','
            << result.stats.uncensored_mean << ',' << result.stats.mean_seconds << '\n';
    }
    {
        std::ofstream out(dir + "/runs.csv");
        if (!out) throw std::runtime_error("cannot write " + dir + "/runs.csv");
        out << "instance,run,seed,best_objective,feasible,generations,seconds\n";
        for (const RunRecord& rec : result.records)
            out << rec.instance << ',' << rec.run << ',' << rec.seed << ',' << rec.best_objective
                << ',' << (rec.feasible ? 1 : 0) << ',' << rec.generations << ',' << rec.seconds
                << '\n';
    }
    if (cfg.convergence) {
        std::ofstream out(dir + "/convergence.csv");
        if (!out) throw std::runtime_error("cannot write " + dir + "/convergence.csv");
        out << "instance,run,generation,best,average\n";
        for (const RunRecord& rec : result.records)
            for (std::size_t g = 0; g < rec.convergence.size(); ++g)
                out << rec.instance << ',' << rec.run << ',' << g << ','
                    << rec.convergence[g].first << ',' << rec.convergence[g].second << '\n';
    }
}

ExperimentConfig config_from_json(const std::string& text) {
    json doc = json::parse(text);
    ExperimentConfig cfg;
    cfg.problem = doc.value("problem", "nurse");
    if (doc.contains("instances")) cfg.instance_paths = doc["instances"].get<std::vector<std::string>>();
    if (doc.contains("generate")) {
        const json& g = doc["generate"];
        GeneratorSpec spec;
        spec.variant = g.value("variant", "structured");
        spec.set_id = g.value("set", 4);
        spec.count = g.value("count", 10);
        spec.nurses = g.value("nurses", 25);
        spec.linked = g.value("linked", false);
        cfg.generate = spec;
    }
    cfg.algo = doc.value("algo", "direct");
    cfg.runs_per_instance = doc.value("runs", 20);
    cfg.base_seed = doc.value("seed", 1ULL);
    cfg.out_dir = doc.value("out", "");
    cfg.convergence = doc.value("convergence", false);

    apply_sections_impl(cfg, doc);
    return cfg;
}

namespace {

void apply_sections_impl(ExperimentConfig& cfg, const json& doc) {
    if (doc.contains("ga")) {
        apply_ga_overrides(cfg.nurse_direct.ga, doc["ga"]);
        apply_ga_overrides(cfg.nurse_indirect.ga, doc["ga"]);
        apply_ga_overrides(cfg.mall.ga, doc["ga"]);
    }
    if (doc.contains("nurse")) {
        const json& n = doc["nurse"];
        if (n.contains("decoder"))
            cfg.nurse_indirect.decoder = decoder_from_name(n["decoder"].get<std::string>());
        if (n.contains("order"))
            cfg.nurse_indirect.order = order_from_name(n["order"].get<std::string>());
        if (n.contains("bound")) cfg.nurse_indirect.simple_bound = n["bound"].get<bool>();
        if (n.contains("adaptive")) cfg.nurse_indirect.adaptive = n["adaptive"].get<bool>();
        if (n.contains("crossover"))
            cfg.nurse_indirect.crossover = perm_crossover_from_name(n["crossover"].get<std::string>());
        if (n.contains("scramble")) cfg.nurse_indirect.scramble = n["scramble"].get<bool>();
        if (n.contains("boundary_crossover"))
            cfg.nurse_indirect.boundary_crossover = n["boundary_crossover"].get<bool>();
        if (n.contains("boundary_mutation"))
            cfg.nurse_indirect.boundary_mutation = n["boundary_mutation"].get<bool>();
        if (n.contains("w_head")) cfg.nurse_indirect.w_head = cfg.nurse_direct.w_head = n["w_head"].get<double>();
        if (n.contains("w_team")) cfg.nurse_indirect.w_team = cfg.nurse_direct.w_team = n["w_team"].get<double>();
        if (n.contains("weights")) {
            const json& w = n["weights"];
            cfg.nurse_indirect.weights.w1 = w.value("w1", 8.0);
            cfg.nurse_indirect.weights.w2 = w.value("w2", 2.0);
            cfg.nurse_indirect.weights.w3 = w.value("w3", 1.0);
            cfg.nurse_indirect.weights.w_p = w.value("wp", 0.5);
        }
        if (n.contains("migration")) {
            std::string mode = n["migration"].get<std::string>();
            cfg.nurse_direct.migration = mode == "none" ? nurse::MigrationMode::None
                                         : mode == "best" ? nurse::MigrationMode::BestKEvery
                                                          : nurse::MigrationMode::RandomPerIndividual;
        }
        if (n.contains("delta_p")) cfg.nurse_direct.delta_p_dc = n["delta_p"].get<double>();
    }
    if (doc.contains("mall")) {
        const json& m = doc["mall"];
        if (m.contains("weights"))
            cfg.mall.weights = mall::weight_preset_from_name(m["weights"].get<std::string>());
        if (m.contains("adaptive_crossover"))
            cfg.mall.adaptive_crossover = m["adaptive_crossover"].get<bool>();
        if (m.contains("adaptive_mutation"))
            cfg.mall.adaptive_mutation = m["adaptive_mutation"].get<bool>();
        if (m.contains("crossover"))
            cfg.mall.crossover = perm_crossover_from_name(m["crossover"].get<std::string>());
        if (m.contains("uniform_p")) cfg.mall.uniform_p = m["uniform_p"].get<double>();
    }
}

}  // namespace

void apply_solver_overrides(ExperimentConfig& cfg, const std::string& json_text) {
    apply_sections_impl(cfg, json::parse(json_text));
}

}  // namespace mcga::harness
