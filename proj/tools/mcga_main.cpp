#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "mcga/harness/experiment.hpp"
#include "mcga/mall/domain.hpp"
#include "mcga/mall/generator.hpp"
#include "mcga/mall/io.hpp"
#include "mcga/nurse/generator.hpp"
#include "mcga/nurse/io.hpp"

namespace {

namespace fs = std::filesystem;
using namespace mcga;

std::vector<std::string> json_files_in(const std::string& dir) {
    std::vector<std::string> files;
    for (const auto& entry : fs::directory_iterator(dir))
        if (entry.is_regular_file() && entry.path().extension() == ".json")
            files.push_back(entry.path().string());
    std::sort(files.begin(), files.end());
    return files;
}

harness::GeneratorSpec parse_generate_spec(const std::string& spec) {
    harness::GeneratorSpec gen;
    std::stringstream ss(spec);
    std::string item;
    while (std::getline(ss, item, ',')) {
        auto eq = item.find('=');
        if (eq == std::string::npos) throw CLI::ValidationError("expected key=value: " + item);
        std::string key = item.substr(0, eq), value = item.substr(eq + 1);
        if (key == "variant")
            gen.variant = value;
        else if (key == "set")
            gen.set_id = std::stoi(value);
        else if (key == "count")
            gen.count = std::stoi(value);
        else if (key == "nurses")
            gen.nurses = std::stoi(value);
        else if (key == "linked")
            gen.linked = value == "1" || value == "true";
        else
            throw CLI::ValidationError("unknown generator key: " + key);
    }
    return gen;
}

struct SolveFlags {
    std::string decoder, order, bound, adaptive;          // nurse indirect
    std::string weights, adaptive_crossover, adaptive_mutation;  // mall indirect
};

bool flag_on(const std::string& value, const char* name) {
    if (value == "on" || value == "true" || value == "1") return true;
    if (value == "off" || value == "false" || value == "0") return false;
    throw CLI::ValidationError(std::string(name) + " must be on or off");
}

int cmd_solve(const std::string& config_path, const std::string& problem,
              const std::string& instances_dir, const std::string& generate_spec,
              const std::string& algo, int runs, std::uint64_t seed, const std::string& out_dir,
              bool convergence, const SolveFlags& flags) {
    harness::ExperimentConfig cfg;
    if (!config_path.empty()) {
        std::ifstream in(config_path);
        if (!in) {
            std::cerr << "cannot open config " << config_path << "\n";
            return 2;
        }
        std::ostringstream buf;
        buf << in.rdbuf();
        cfg = harness::config_from_json(buf.str());
    }
    // command line flags override config file fields
    if (!problem.empty()) cfg.problem = problem;
    if (!instances_dir.empty()) cfg.instance_paths = json_files_in(instances_dir);
    if (!generate_spec.empty()) cfg.generate = parse_generate_spec(generate_spec);
    if (!algo.empty()) cfg.algo = algo;
    if (runs > 0) cfg.runs_per_instance = runs;
    if (seed != 0) cfg.base_seed = seed;
    if (!out_dir.empty()) cfg.out_dir = out_dir;
    if (convergence) cfg.convergence = true;

    // per-solver flags override config fields as well
    nlohmann::json overrides;
    if (!flags.decoder.empty()) overrides["nurse"]["decoder"] = flags.decoder;
    if (!flags.order.empty()) overrides["nurse"]["order"] = flags.order;
    if (!flags.bound.empty()) overrides["nurse"]["bound"] = flag_on(flags.bound, "--bound");
    if (!flags.adaptive.empty())
        overrides["nurse"]["adaptive"] = flag_on(flags.adaptive, "--adaptive");
    if (!flags.weights.empty()) overrides["mall"]["weights"] = flags.weights;
    if (!flags.adaptive_crossover.empty())
        overrides["mall"]["adaptive_crossover"] =
            flag_on(flags.adaptive_crossover, "--adaptive-crossover");
    if (!flags.adaptive_mutation.empty())
        overrides["mall"]["adaptive_mutation"] =
            flag_on(flags.adaptive_mutation, "--adaptive-mutation");
    if (!overrides.empty()) harness::apply_solver_overrides(cfg, overrides.dump());

    harness::ExperimentResult result = harness::run_experiment(cfg);
    if (!cfg.out_dir.empty()) emit_outputs(cfg, result, cfg.out_dir);

    std::cout << "instances: " << result.stats.instances
              << "  feasibility: " << result.stats.feasibility
              << "  " << (cfg.problem == "mall" ? "rent" : "cost") << ": "
              << result.stats.cost_or_rent << "  mean seconds/run: " << result.stats.mean_seconds
              << "\n";
    return 0;
}

int cmd_gen(const std::string& problem, int set_id, const std::string& variant, int count,
            int nurses, std::uint64_t seed, bool linked, const std::string& out_dir) {
    fs::create_directories(out_dir);
    if (problem == "nurse") {
        nurse::GenSpec spec;
        spec.variant = nurse::cost_variant_from_name(variant);
        spec.nurse_count = nurses;
        for (int i = 0; i < count; ++i) {
            spec.name = "nurse-" + variant + "-" + std::to_string(i);
            nurse::NurseInstance inst =
                nurse::generate_nurse_instance(spec, hash_combine_u64(seed, i));
            nurse::save_nurse_instance(inst, out_dir + "/" + spec.name + ".json");
        }
    } else if (problem == "mall") {
        for (int i = 0; i < count; ++i) {
            std::uint64_t file_seed = hash_combine_u64(seed, i);
            if (linked) {
                for (const mall::MallInstance& inst : mall::generate_linked_instances(file_seed))
                    mall::save_mall_instance(inst, out_dir + "/" + inst.name + ".json");
            } else {
                mall::MallInstance inst = mall::generate_mall_instance(set_id, file_seed);
                mall::save_mall_instance(inst, out_dir + "/" + inst.name + ".json");
            }
        }
    } else {
        std::cerr << "unknown problem: " << problem << "\n";
        return 2;
    }
    std::cout << "wrote " << count << (linked ? " linked quadruple(s)" : " instance(s)")
              << " to " << out_dir << "\n";
    return 0;
}

int cmd_validate(const std::string& path) {
    std::string nurse_error, mall_error;
    try {
        nurse::load_nurse_instance(path);
        std::cout << path << ": valid nurse instance\n";
        return 0;
    } catch (const std::exception& e) {
        nurse_error = e.what();
    }
    try {
        mall::load_mall_instance(path);
        std::cout << path << ": valid mall instance\n";
        return 0;
    } catch (const std::exception& e) {
        mall_error = e.what();
    }
    std::cerr << path << ": invalid\n  as nurse instance: " << nurse_error
              << "\n  as mall instance: " << mall_error << "\n";
    return 2;
}

int cmd_bound(const std::string& path) {
    try {
        mall::MallInstance inst = mall::load_mall_instance(path);
        std::cout << mall::upper_bound(inst) << "\n";
        return 0;
    } catch (const std::exception& e) {
        std::cerr << path << ": " << e.what() << "\n";
        return 2;
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"genetic algorithm suite for nurse rostering and mall tenant selection"};
    app.require_subcommand(1);

    std::string config_path, problem, instances_dir, generate_spec, algo, out_dir;
    int runs = 0, set_id = 4, count = 10, nurses = 25;
    std::string variant = "structured", file;
    std::uint64_t seed = 0;
    bool convergence = false, linked = false;
    SolveFlags flags;

    CLI::App* solve = app.add_subcommand("solve", "run a batch of seeded optimisation runs");
    solve->add_option("--config", config_path, "JSON config file (flags override its fields)");
    solve->add_option("--problem", problem, "nurse | mall");
    solve->add_option("--instances", instances_dir, "directory of instance JSON files");
    solve->add_option("--generate", generate_spec,
                      "generator spec, e.g. variant=random,count=10 or set=4,count=10");
    solve->add_option("--algo", algo,
                      "nurse: direct|coevo|coevo-repair|delta|indirect; "
                      "mall: direct|coevo|coevo-mate|coevo-repair|indirect");
    solve->add_option("--runs", runs, "runs per instance (default 20)");
    solve->add_option("--seed", seed, "base seed");
    solve->add_option("--out", out_dir, "output directory for CSV files");
    solve->add_flag("--convergence", convergence, "emit per-generation traces");
    solve->add_option("--decoder", flags.decoder, "nurse indirect: highest|overall|combined");
    solve->add_option("--order", flags.order,
                      "nurse indirect: lowday|rand|biased|cheapest|randcost");
    solve->add_option("--bound", flags.bound, "nurse indirect simple bound: on|off");
    solve->add_option("--adaptive", flags.adaptive,
                      "nurse indirect self-adjusting weights: on|off");
    solve->add_option("--weights", flags.weights, "mall indirect: low|medium|high|auto");
    solve->add_option("--adaptive-crossover", flags.adaptive_crossover, "mall: on|off");
    solve->add_option("--adaptive-mutation", flags.adaptive_mutation, "mall: on|off");

    CLI::App* gen = app.add_subcommand("gen", "generate instance files");
    gen->add_option("--problem", problem, "nurse | mall")->required();
    gen->add_option("--set", set_id, "mall data set id (3..7)");
    gen->add_option("--variant", variant, "nurse cost variant: structured|random|highcost");
    gen->add_option("--count", count, "number of instances");
    gen->add_option("--nurses", nurses, "nurses per instance");
    gen->add_option("--seed", seed, "base seed");
    gen->add_flag("--linked", linked, "mall: emit linked files across sets 4..7");
    gen->add_option("--out", out_dir, "output directory")->required();

    CLI::App* validate = app.add_subcommand("validate", "validate an instance file");
    validate->add_option("file", file, "instance JSON file")->required();

    CLI::App* bound = app.add_subcommand("bound", "print the mall upper bound");
    bound->add_option("file", file, "mall instance JSON file")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (solve->parsed())
            return cmd_solve(config_path, problem, instances_dir, generate_spec, algo, runs, seed,
                             out_dir, convergence, flags);
        if (gen->parsed())
            return cmd_gen(problem, set_id, variant, count, nurses, seed, linked, out_dir);
        if (validate->parsed()) return cmd_validate(file);
        if (bound->parsed()) return cmd_bound(file);
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
