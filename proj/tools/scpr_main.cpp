// scpr: command-line front end for the SCPR toolkit.
//
// Subcommands: generate, validate, reduce, solve, dedup, bench, ingest.
// Exit codes: 0 success, 1 usage error, 2 infeasible (single-instance
// solve), 3 partial failures in batch mode.

#include <filesystem>
#include <iostream>

#include <CLI11.hpp>
#include <json.hpp>

#include "scpr/scpr.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitInfeasible = 2;
constexpr int kExitPartial = 3;

json params_to_json(const scpr::HeuristicParams& p) {
    json doc;
    doc["sa"] = {{"initial_temperature", p.sa.initial_temperature},
                 {"cooling", p.sa.cooling},
                 {"max_flips", p.sa.max_flips}};
    doc["ga"] = {{"population", p.ga.population},
                 {"generations", p.ga.generations},
                 {"crossover_rate", p.ga.crossover_rate},
                 {"mutation_rate", p.ga.mutation_rate}};
    doc["pso"] = {{"swarm", p.pso.swarm},
                  {"iterations", p.pso.iterations},
                  {"inertia", p.pso.inertia},
                  {"accel_personal", p.pso.accel_personal},
                  {"accel_global", p.pso.accel_global},
                  {"threshold", p.pso.threshold}};
    doc["mlses"] = {{"restart_threshold", p.mlses.restart_threshold},
                    {"neighbourhood", p.mlses.neighbourhood},
                    {"max_steps", p.mlses.max_steps}};
    doc["note"] = "negative budgets resolve to instance-scaled defaults";
    return doc;
}

void params_from_json(const json& doc, scpr::HeuristicParams& p) {
    if (doc.contains("sa")) {
        const auto& j = doc["sa"];
        if (j.contains("initial_temperature")) p.sa.initial_temperature = j["initial_temperature"];
        if (j.contains("cooling")) p.sa.cooling = j["cooling"];
        if (j.contains("max_flips")) p.sa.max_flips = j["max_flips"];
    }
    if (doc.contains("ga")) {
        const auto& j = doc["ga"];
        if (j.contains("population")) p.ga.population = j["population"];
        if (j.contains("generations")) p.ga.generations = j["generations"];
        if (j.contains("crossover_rate")) p.ga.crossover_rate = j["crossover_rate"];
        if (j.contains("mutation_rate")) p.ga.mutation_rate = j["mutation_rate"];
    }
    if (doc.contains("pso")) {
        const auto& j = doc["pso"];
        if (j.contains("swarm")) p.pso.swarm = j["swarm"];
        if (j.contains("iterations")) p.pso.iterations = j["iterations"];
        if (j.contains("inertia")) p.pso.inertia = j["inertia"];
        if (j.contains("accel_personal")) p.pso.accel_personal = j["accel_personal"];
        if (j.contains("accel_global")) p.pso.accel_global = j["accel_global"];
        if (j.contains("threshold")) p.pso.threshold = j["threshold"];
    }
    if (doc.contains("mlses")) {
        const auto& j = doc["mlses"];
        if (j.contains("restart_threshold")) p.mlses.restart_threshold = j["restart_threshold"];
        if (j.contains("neighbourhood")) p.mlses.neighbourhood = j["neighbourhood"];
        if (j.contains("max_steps")) p.mlses.max_steps = j["max_steps"];
    }
}

struct HeuristicFlags {
    std::string config_file;

    void attach(CLI::App* app, scpr::HeuristicParams& params) {
        app->add_option("--config", config_file, "JSON file with heuristic hyperparameters");
        app->add_option("--sa-t0", params.sa.initial_temperature,
                        "SA initial temperature (<=0: auto)");
        app->add_option("--sa-cooling", params.sa.cooling, "SA geometric cooling factor");
        app->add_option("--sa-flips", params.sa.max_flips, "SA flip budget (<0: auto)");
        app->add_option("--ga-pop", params.ga.population, "GA population size");
        app->add_option("--ga-gens", params.ga.generations, "GA generations");
        app->add_option("--ga-crossover", params.ga.crossover_rate, "GA crossover rate");
        app->add_option("--ga-mutation", params.ga.mutation_rate, "GA mutation rate (<0: 1/r)");
        app->add_option("--pso-swarm", params.pso.swarm, "PSO swarm size");
        app->add_option("--pso-iters", params.pso.iterations, "PSO iterations");
        app->add_option("--pso-inertia", params.pso.inertia, "PSO inertia weight");
        app->add_option("--pso-accel-personal", params.pso.accel_personal,
                        "PSO personal acceleration");
        app->add_option("--pso-accel-global", params.pso.accel_global,
                        "PSO global acceleration");
        app->add_option("--mlses-restart", params.mlses.restart_threshold,
                        "MLSES-CC restart threshold");
        app->add_option("--mlses-steps", params.mlses.max_steps,
                        "MLSES-CC step budget (<0: auto)");
    }

    // config file first, then explicit flags on top
    void apply_config(CLI::App* app, scpr::HeuristicParams& params) {
        if (config_file.empty()) return;
        std::ifstream in(config_file);
        if (!in) throw CLI::ValidationError("--config", "cannot open " + config_file);
        json doc = json::parse(in, nullptr, true);
        scpr::HeuristicParams from_file;
        params_from_json(doc, from_file);
        // flags the user actually passed beat the file
        scpr::HeuristicParams merged = from_file;
        auto touched = [&](const std::string& name) {
            return app->count(name) > 0;
        };
        if (touched("--sa-t0")) merged.sa.initial_temperature = params.sa.initial_temperature;
        if (touched("--sa-cooling")) merged.sa.cooling = params.sa.cooling;
        if (touched("--sa-flips")) merged.sa.max_flips = params.sa.max_flips;
        if (touched("--ga-pop")) merged.ga.population = params.ga.population;
        if (touched("--ga-gens")) merged.ga.generations = params.ga.generations;
        if (touched("--ga-crossover")) merged.ga.crossover_rate = params.ga.crossover_rate;
        if (touched("--ga-mutation")) merged.ga.mutation_rate = params.ga.mutation_rate;
        if (touched("--pso-swarm")) merged.pso.swarm = params.pso.swarm;
        if (touched("--pso-iters")) merged.pso.iterations = params.pso.iterations;
        if (touched("--pso-inertia")) merged.pso.inertia = params.pso.inertia;
        if (touched("--pso-accel-personal"))
            merged.pso.accel_personal = params.pso.accel_personal;
        if (touched("--pso-accel-global")) merged.pso.accel_global = params.pso.accel_global;
        if (touched("--mlses-restart"))
            merged.mlses.restart_threshold = params.mlses.restart_threshold;
        if (touched("--mlses-steps")) merged.mlses.max_steps = params.mlses.max_steps;
        params = merged;
    }
};

int cmd_generate(const std::string& out_dir, std::size_t count, scpr::GeneratorParams params) {
    if (!out_dir.empty()) fs::create_directories(out_dir);
    for (std::size_t i = 0; i < count; ++i) {
        scpr::GeneratorParams current = params;
        current.seed = params.seed + i;
        const scpr::Instance inst = scpr::generate(current);
        if (out_dir.empty()) {
            std::cout << scpr::serialize(inst);
        } else {
            const std::string name = inst.name + ".json";
            scpr::write_instance_file((fs::path(out_dir) / name).string(), inst);
        }
    }
    if (!out_dir.empty())
        std::cout << "wrote " << count << " instance(s) to " << out_dir << "\n";
    return kExitOk;
}

int cmd_validate(const std::vector<std::string>& files) {
    int bad = 0;
    for (const std::string& file : files) {
        try {
            std::ifstream in(file, std::ios::binary);
            if (!in) throw scpr::ParseError("cannot open " + file);
            std::ostringstream buf;
            buf << in.rdbuf();
            const scpr::Instance inst = scpr::parse(buf.str());
            const auto report = scpr::validate(inst);
            if (report.empty()) {
                std::cout << file << ": OK (n=" << inst.universe_size
                          << " r=" << inst.num_reasons << " m=" << inst.pairs.size() << ")\n";
            } else {
                ++bad;
                for (const std::string& v : report) std::cout << file << ": " << v << "\n";
            }
        } catch (const std::exception& e) {
            ++bad;
            std::cout << file << ": " << e.what() << "\n";
        }
    }
    return bad ? kExitPartial : kExitOk;
}

int cmd_reduce(const std::string& file, bool trace, bool no_trimming,
               const std::string& out_file) {
    const scpr::Instance inst = scpr::read_instance_file(file);
    scpr::ReduceConfig config;
    config.enable_reason_trimming = !no_trimming;
    const scpr::ReductionOutcome out = scpr::reduce_to_fixpoint(inst, config);
    if (trace) std::cout << scpr::format_trace(out.trace);
    std::cout << "pairs: " << inst.pairs.size() << " -> " << out.reduced.pairs.size()
              << ", universe: " << inst.universe_size << " -> " << out.reduced.universe_size
              << ", fixed reasons:";
    for (scpr::Index q : out.fixed_reasons) std::cout << " " << q;
    std::cout << "\nfully_solved: " << (out.fully_solved ? "true" : "false") << "\n";
    if (!out_file.empty()) scpr::write_instance_file(out_file, out.reduced);
    return kExitOk;
}

int cmd_solve(const std::string& file, const std::string& solver_name, std::uint64_t seed,
              std::int64_t time_limit_ms, bool no_reduce, bool trace,
              const std::string& dump_model, const scpr::HeuristicParams& params) {
    const scpr::Instance inst = scpr::read_instance_file(file);
    const scpr::SolverKind kind = scpr::solver_from_string(solver_name);
    std::optional<std::chrono::milliseconds> limit;
    if (time_limit_ms >= 0) limit = std::chrono::milliseconds{time_limit_ms};

    scpr::ReductionOutcome outcome;
    const scpr::Instance* target = &inst;
    if (!no_reduce) {
        outcome = scpr::reduce_to_fixpoint(inst);
        if (trace) std::cout << scpr::format_trace(outcome.trace);
        target = &outcome.reduced;
    }
    if (!dump_model.empty())
        scpr::write_text_file(dump_model, scpr::write_lp(scpr::build_ilp(*target)));

    scpr::Solution solution;
    if (!no_reduce && outcome.fully_solved) {
        solution = scpr::make_solution(inst, outcome.fixed_reasons, true);
    } else {
        const scpr::SolveResult res =
            scpr::run_solver(kind, *target, params, scpr::derive_seed(seed, solver_name), limit);
        if (res.status == scpr::SolveStatus::Timeout) {
            std::cout << "timeout\n";
            return kExitPartial;
        }
        if (res.status == scpr::SolveStatus::Infeasible) {
            std::cout << "infeasible\n";
            return kExitInfeasible;
        }
        solution = no_reduce ? res.solution
                             : scpr::lift_solution(outcome, res.solution, inst);
    }
    if (!scpr::is_feasible_cover(inst, solution.selected)) {
        std::cout << "error: solver returned an infeasible selection\n";
        return kExitPartial;
    }
    std::cout << "cardinality: " << solution.cardinality() << "\nselected:";
    for (scpr::Index q : solution.selected) std::cout << " " << q;
    std::cout << "\nproven_optimal: " << (solution.proven_optimal ? "true" : "false") << "\n";
    return kExitOk;
}

int cmd_dedup(const std::string& dir, const std::string& out_dir) {
    const scpr::DedupResult result = scpr::dedup_corpus(dir);
    std::cout << "files: " << result.raw_count << ", unique: " << result.unique.size()
              << ", duplicates: " << result.raw_count - result.unique.size()
              << ", skipped: " << result.skipped.size() << "\n";
    for (const scpr::DuplicateGroup& g : result.groups)
        if (g.members.size() > 1)
            std::cout << "group " << g.fingerprint << ": " << g.members.size()
                      << " files, representative " << g.representative << "\n";
    for (const auto& [file, error] : result.skipped)
        std::cout << "skipped " << file << ": " << error << "\n";
    if (!out_dir.empty()) {
        fs::create_directories(out_dir);
        for (const scpr::NamedInstance& named : result.unique) {
            const fs::path dest = fs::path(out_dir) / fs::path(named.source).filename();
            scpr::write_instance_file(dest.string(), named.instance);
        }
        std::cout << "wrote " << result.unique.size() << " unique instance(s) to " << out_dir
                  << "\n";
    }
    return result.skipped.empty() ? kExitOk : kExitPartial;
}

int cmd_bench(const std::string& dir, const std::vector<std::string>& solver_names,
              const std::string& oracle_name, std::uint64_t seed, unsigned jobs,
              std::int64_t time_limit_ms, bool keep_duplicates, bool no_trimming,
              const std::string& out_dir, const scpr::HeuristicParams& heuristics) {
    scpr::PipelineOptions opts;
    for (const std::string& name : solver_names)
        opts.solvers.push_back(scpr::solver_from_string(name));
    if (opts.solvers.empty())
        throw CLI::ValidationError("--solver", "at least one solver is required");
    opts.oracle = scpr::solver_from_string(oracle_name);
    opts.seed = seed;
    opts.jobs = jobs;
    opts.reduce.enable_reason_trimming = !no_trimming;
    opts.heuristics = heuristics;
    if (time_limit_ms >= 0) opts.time_limit = std::chrono::milliseconds{time_limit_ms};

    const scpr::DedupResult dedup = scpr::dedup_corpus(dir, keep_duplicates);
    const auto records = scpr::run_pipeline(dedup.unique, opts);
    scpr::BenchSummary summary = scpr::summarize(records, oracle_name);
    summary.raw_count = dedup.raw_count;
    summary.unique_count = dedup.groups.size();

    std::cout << scpr::summary_text(summary);
    if (!out_dir.empty()) {
        scpr::write_reports(out_dir, records, summary);
        std::cout << "\nreports written to " << out_dir << "\n";
    }
    bool partial = !dedup.skipped.empty();
    for (const scpr::BenchRecord& rec : records)
        partial |= rec.status == "error" || rec.status == "timeout";
    return partial ? kExitPartial : kExitOk;
}

int cmd_ingest(const std::string& dir, const std::string& format, const std::string& out_dir) {
    const scpr::IngestResult result = scpr::ingest_external(dir, format);
    fs::create_directories(out_dir);
    for (const scpr::NamedInstance& named : result.instances) {
        const fs::path dest = fs::path(out_dir) / fs::path(named.source).filename();
        scpr::write_instance_file(dest.string(), named.instance);
    }
    std::cout << "converted " << result.instances.size() << " file(s), "
              << result.failures.size() << " failure(s)\n";
    for (const auto& [file, error] : result.failures)
        std::cout << "failed " << file << ": " << error << "\n";
    return result.failures.empty() ? kExitOk : kExitPartial;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"SCPR toolkit: reduce-then-solve for set covering with reasons"};
    app.require_subcommand(0, 1);

    bool show_params = false;
    app.add_flag("--show-params", show_params, "print heuristic defaults as JSON and exit");

    scpr::HeuristicParams heuristics;

    // generate
    auto* gen = app.add_subcommand("generate", "emit seeded synthetic instances");
    std::string gen_out;
    std::size_t gen_count = 1;
    std::string gen_preset = "cdcac-like";
    scpr::GeneratorParams gen_params;
    bool gen_no_feasible = false;
    gen->add_option("--out", gen_out, "output directory (default: stdout)");
    gen->add_option("--count", gen_count, "number of instances (seeds seed..seed+count-1)");
    gen->add_option("--seed", gen_params.seed, "base seed");
    gen->add_option("--preset", gen_preset, "uniform | cdcac-like | scp");
    gen->add_option("--universe", gen_params.universe_size, "universe size (0: preset default)");
    gen->add_option("--reasons", gen_params.num_reasons, "reason count (0: preset default)");
    gen->add_option("--pairs", gen_params.num_pairs, "pair count (0: preset default)");
    gen->add_option("--rmin", gen_params.reason_set_min, "min reason-set size");
    gen->add_option("--rmax", gen_params.reason_set_max, "max reason-set size");
    gen->add_flag("--no-ensure-feasible", gen_no_feasible, "skip the feasibility patch");

    // validate
    auto* val = app.add_subcommand("validate", "check instance files");
    std::vector<std::string> val_files;
    val->add_option("files", val_files, "instance files")->required();

    // reduce
    auto* red = app.add_subcommand("reduce", "apply the reduction to one instance");
    std::string red_file, red_out;
    bool red_trace = false, red_no_trimming = false;
    red->add_option("file", red_file, "instance file")->required();
    red->add_flag("--trace", red_trace, "print one line per rule application");
    red->add_flag("--no-trimming", red_no_trimming, "compare raw reason sets in dominance");
    red->add_option("--out", red_out, "write the reduced instance here");

    // solve
    auto* sol = app.add_subcommand("solve", "reduce and solve one instance");
    std::string sol_file, sol_solver = "ilp", sol_dump;
    std::uint64_t sol_seed = 0;
    std::int64_t sol_limit = -1;
    bool sol_no_reduce = false, sol_trace = false;
    sol->add_option("file", sol_file, "instance file")->required();
    sol->add_option("--solver", sol_solver,
                    "brute | ilp | deepening | maxsat | greedy | sa | ga | pso | mlses");
    sol->add_option("--seed", sol_seed, "seed for randomised solvers");
    sol->add_option("--time-limit-ms", sol_limit, "wall-clock budget (-1: none)");
    sol->add_flag("--no-reduce", sol_no_reduce, "solve the raw instance");
    sol->add_flag("--trace", sol_trace, "print reduction trace");
    sol->add_option("--dump-model", sol_dump, "write the 0-1 model in LP format");
    HeuristicFlags sol_flags;
    sol_flags.attach(sol, heuristics);

    // dedup
    auto* ded = app.add_subcommand("dedup", "group duplicate instances by fingerprint");
    std::string ded_dir, ded_out;
    ded->add_option("dir", ded_dir, "corpus directory")->required();
    ded->add_option("--out", ded_out, "write unique representatives here");

    // bench
    auto* ben = app.add_subcommand("bench", "run the reduce-then-solve pipeline over a corpus");
    std::string ben_dir, ben_oracle = "brute", ben_out;
    std::vector<std::string> ben_solvers;
    std::uint64_t ben_seed = 0;
    unsigned ben_jobs = 1;
    std::int64_t ben_limit = -1;
    bool ben_keep = false, ben_no_trimming = false;
    ben->add_option("dir", ben_dir, "corpus directory")->required();
    ben->add_option("--solver", ben_solvers, "solvers to benchmark")
        ->delimiter(',')
        ->required();
    ben->add_option("--oracle", ben_oracle, "exact solver used for scoring");
    ben->add_option("--seed", ben_seed, "run seed");
    ben->add_option("--jobs", ben_jobs, "parallel instances");
    ben->add_option("--time-limit-ms", ben_limit, "per-solve budget (-1: none)");
    ben->add_flag("--keep-duplicates", ben_keep, "benchmark the corpus with duplicates");
    ben->add_flag("--no-trimming", ben_no_trimming, "disable reason trimming in dominance");
    ben->add_option("--out", ben_out, "directory for records.csv and summaries");
    HeuristicFlags ben_flags;
    ben_flags.attach(ben, heuristics);

    // ingest
    auto* ing = app.add_subcommand("ingest", "convert a foreign corpus to canonical files");
    std::string ing_dir, ing_format = "canonical", ing_out;
    ing->add_option("dir", ing_dir, "source directory")->required();
    ing->add_option("--format", ing_format, "registered format adapter");
    ing->add_option("--out", ing_out, "destination directory")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return e.get_exit_code() == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (show_params && !app.get_subcommands().size()) {
            std::cout << params_to_json(heuristics).dump(2) << "\n";
            return kExitOk;
        }
        if (gen->parsed()) {
            gen_params.preset = scpr::preset_from_string(gen_preset);
            gen_params.ensure_feasible = !gen_no_feasible;
            return cmd_generate(gen_out, gen_count, gen_params);
        }
        if (val->parsed()) return cmd_validate(val_files);
        if (red->parsed()) return cmd_reduce(red_file, red_trace, red_no_trimming, red_out);
        if (sol->parsed()) {
            sol_flags.apply_config(sol, heuristics);
            return cmd_solve(sol_file, sol_solver, sol_seed, sol_limit, sol_no_reduce,
                             sol_trace, sol_dump, heuristics);
        }
        if (ded->parsed()) return cmd_dedup(ded_dir, ded_out);
        if (ben->parsed()) {
            ben_flags.apply_config(ben, heuristics);
            return cmd_bench(ben_dir, ben_solvers, ben_oracle, ben_seed, ben_jobs, ben_limit,
                             ben_keep, ben_no_trimming, ben_out, heuristics);
        }
        if (ing->parsed()) return cmd_ingest(ing_dir, ing_format, ing_out);
        std::cout << app.help();
        return kExitOk;
    } catch (const CLI::ValidationError& e) {
        std::cerr << e.what() << "\n";
        return kExitUsage;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitPartial;
    }
    return kExitOk;
}
