#pragma once

// Benchmark harness: corpus loading and dedup, the reduce-then-solve
// pipeline with oracle scoring, and report emission (records.csv,
// summary.txt, summary.json, runtime_plot.csv).
//
// Determinism: instances are processed in input order, solvers in list
// order, and every randomised solver draws its seed from
// derive_seed(run_seed, "<instance fingerprint>/<solver>"), so two runs
// with identical inputs differ only in the timing columns.

#include <atomic>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iomanip>
#include <map>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "scpr/core.hpp"
#include "scpr/fingerprint.hpp"
#include "scpr/io.hpp"
#include "scpr/reduce.hpp"
#include "scpr/solvers.hpp"

namespace scpr {

struct NamedInstance {
    std::string fingerprint;
    std::string source;  // file name or generator tag
    Instance instance;
};

inline NamedInstance make_named(Instance inst, std::string source) {
    NamedInstance named;
    named.fingerprint = fingerprint(inst);
    named.source = std::move(source);
    named.instance = std::move(inst);
    return named;
}

// ---------------------------------------------------------------------------
// corpus loading and dedup

struct DuplicateGroup {
    std::string fingerprint;
    std::string representative;         // lexicographically first file name
    std::vector<std::string> members;   // all file names, sorted
};

struct DedupResult {
    std::vector<NamedInstance> unique;  // one representative per group
    std::vector<DuplicateGroup> groups;
    std::vector<std::pair<std::string, std::string>> skipped;  // file, error
    std::size_t raw_count = 0;          // parseable files before dedup
};

inline std::vector<std::string> list_instance_files(const std::string& dir) {
    std::vector<std::string> files;
    for (const auto& entry : std::filesystem::directory_iterator(dir))
        if (entry.is_regular_file()) files.push_back(entry.path().string());
    std::sort(files.begin(), files.end());
    return files;
}

/// Groups parseable files by canonical fingerprint; unparseable files land
/// in the skip report and the run continues.
inline DedupResult dedup_corpus(const std::string& dir, bool keep_duplicates = false) {
    DedupResult result;
    std::map<std::string, DuplicateGroup> groups;
    std::vector<NamedInstance> all;
    for (const std::string& file : list_instance_files(dir)) {
        Instance inst;
        try {
            inst = read_instance_file(file);
        } catch (const std::exception& e) {
            result.skipped.emplace_back(file, e.what());
            continue;
        }
        ++result.raw_count;
        NamedInstance named = make_named(std::move(inst), file);
        auto [it, fresh] = groups.try_emplace(named.fingerprint);
        if (fresh) {
            it->second.fingerprint = named.fingerprint;
            it->second.representative = file;
        }
        it->second.members.push_back(file);
        if (fresh || keep_duplicates) all.push_back(std::move(named));
    }
    for (auto& [fp, group] : groups) result.groups.push_back(group);
    result.unique = std::move(all);
    return result;
}

// ---------------------------------------------------------------------------
// pipeline

struct BenchRecord {
    std::string instance_id;  // "<fingerprint>:<source>"
    std::string domain;
    std::string solver;
    std::string status;       // ok | infeasible | timeout | error
    std::optional<std::size_t> cardinality;
    std::optional<std::size_t> optimal_cardinality;
    std::string optimal_status;  // ok | infeasible | timeout | error
    bool exact_match = false;
    std::chrono::microseconds reduce_time{0};
    std::chrono::microseconds solve_time{0};
    bool fully_solved_by_reduction = false;
    std::size_t pre_pairs = 0;
    std::size_t post_pairs = 0;
    std::uint64_t pre_mass = 0;   // sum |A_i| * |R_i|
    std::uint64_t post_mass = 0;
};

struct PipelineOptions {
    std::vector<SolverKind> solvers;
    SolverKind oracle = SolverKind::Brute;
    unsigned jobs = 1;
    std::optional<std::chrono::milliseconds> time_limit;
    ReduceConfig reduce;
    HeuristicParams heuristics;
    std::uint64_t seed = 0;
};

namespace detail {

inline std::uint64_t pair_mass(const Instance& inst) {
    std::uint64_t mass = 0;
    for (const Pair& p : inst.pairs)
        mass += static_cast<std::uint64_t>(p.covering.size()) * p.reasons.size();
    return mass;
}

inline bool match(const std::optional<std::size_t>& got, const std::string& got_status,
                  const std::optional<std::size_t>& want, const std::string& want_status) {
    if (got && want) return *got == *want;
    return got_status == "infeasible" && want_status == "infeasible";
}

inline void run_one_instance(const NamedInstance& named, const PipelineOptions& opts,
                             std::vector<BenchRecord>& out) {
    const Instance& original = named.instance;
    Stopwatch reduce_watch;
    const ReductionOutcome outcome = reduce_to_fixpoint(original, opts.reduce);
    const auto reduce_time = reduce_watch.elapsed();

    BenchRecord base;
    base.instance_id = named.fingerprint + ":" + named.source;
    base.domain = original.domain;
    base.reduce_time = reduce_time;
    base.fully_solved_by_reduction = outcome.fully_solved;
    base.pre_pairs = original.pairs.size();
    base.post_pairs = outcome.reduced.pairs.size();
    base.pre_mass = pair_mass(original);
    base.post_mass = pair_mass(outcome.reduced);

    // oracle verdict on the residual instance
    std::optional<std::size_t> optimal;
    std::string optimal_status = "ok";
    if (outcome.fully_solved) {
        optimal = outcome.fixed_reasons.size();
    } else {
        try {
            const SolveResult res = run_solver(opts.oracle, outcome.reduced, opts.heuristics,
                                               derive_seed(opts.seed, named.fingerprint + "/oracle"),
                                               opts.time_limit);
            if (res.status == SolveStatus::Feasible)
                optimal = lift_solution(outcome, res.solution).cardinality();
            else
                optimal_status =
                    res.status == SolveStatus::Infeasible ? "infeasible" : "timeout";
        } catch (const std::exception&) {
            optimal_status = "error";
        }
    }

    for (SolverKind kind : opts.solvers) {
        BenchRecord rec = base;
        rec.solver = to_string(kind);
        rec.optimal_cardinality = optimal;
        rec.optimal_status = optimal_status;
        if (outcome.fully_solved) {
            // the verification gate applies to reduction-solved records too
            if (!is_feasible_cover(original, outcome.fixed_reasons)) {
                rec.status = "error";
            } else {
                rec.status = "ok";
                rec.cardinality = outcome.fixed_reasons.size();
            }
            rec.solve_time = std::chrono::microseconds{0};
        } else {
            try {
                Stopwatch solve_watch;
                const SolveResult res =
                    run_solver(kind, outcome.reduced, opts.heuristics,
                               derive_seed(opts.seed, named.fingerprint + "/" + rec.solver),
                               opts.time_limit);
                rec.solve_time = solve_watch.elapsed();
                if (res.status == SolveStatus::Feasible) {
                    const Solution lifted = lift_solution(outcome, res.solution, original);
                    if (!is_feasible_cover(original, lifted.selected)) {
                        rec.status = "error";  // verification gate
                    } else {
                        rec.status = "ok";
                        rec.cardinality = lifted.cardinality();
                    }
                } else if (res.status == SolveStatus::Infeasible) {
                    rec.status = "infeasible";
                } else {
                    rec.status = "timeout";
                }
            } catch (const std::exception&) {
                rec.status = "error";
            }
        }
        rec.exact_match = detail::match(rec.cardinality, rec.status, optimal, optimal_status);
        out.push_back(std::move(rec));
    }
}

}  // namespace detail

/// Reduce, solve, lift, verify, score.  Parallelises across instances only;
/// the record order is (instance, solver) regardless of the job count.
inline std::vector<BenchRecord> run_pipeline(const std::vector<NamedInstance>& instances,
                                             const PipelineOptions& opts) {
    if (!is_exact(opts.oracle))
        throw std::invalid_argument("oracle must be an exact solver");
    std::vector<std::vector<BenchRecord>> slots(instances.size());
    const unsigned jobs = std::max(1u, opts.jobs);
    if (jobs == 1 || instances.size() <= 1) {
        for (std::size_t i = 0; i < instances.size(); ++i)
            detail::run_one_instance(instances[i], opts, slots[i]);
    } else {
        std::atomic<std::size_t> next{0};
        auto worker = [&] {
            for (std::size_t i = next.fetch_add(1); i < instances.size();
                 i = next.fetch_add(1))
                detail::run_one_instance(instances[i], opts, slots[i]);
        };
        std::vector<std::thread> pool;
        for (unsigned t = 0; t < std::min<std::size_t>(jobs, instances.size()); ++t)
            pool.emplace_back(worker);
        for (std::thread& t : pool) t.join();
    }
    std::vector<BenchRecord> records;
    for (auto& slot : slots)
        for (BenchRecord& rec : slot) records.push_back(std::move(rec));
    return records;
}

// ---------------------------------------------------------------------------
// summaries and reports

struct SolverSummary {
    std::string solver;
    std::size_t records = 0;
    double avg_solve_seconds = 0.0;
    double accuracy = 0.0;  // exact-match fraction
};

struct DomainSummary {
    std::string domain;
    std::size_t unique_count = 0;
    std::size_t reduction_solved = 0;
    std::size_t solver_required = 0;
};

struct BenchSummary {
    std::vector<SolverSummary> per_solver;
    std::vector<DomainSummary> per_domain;
    std::size_t instance_count = 0;
    std::size_t reduction_solved = 0;
    std::size_t raw_count = 0;     // corpus files before dedup (when known)
    std::size_t unique_count = 0;  // after dedup (when known)
    std::string oracle;
    double reduction_solved_fraction = 0.0;
};

inline BenchSummary summarize(const std::vector<BenchRecord>& records,
                              const std::string& oracle_name = "brute") {
    BenchSummary summary;
    summary.oracle = oracle_name;
    std::map<std::string, SolverSummary> per_solver;
    std::map<std::string, DomainSummary> per_domain;
    std::map<std::string, std::pair<std::string, bool>> instances;  // id -> (domain, solved)
    std::map<std::string, double> time_sum;
    std::map<std::string, std::size_t> match_count;

    for (const BenchRecord& rec : records) {
        auto& s = per_solver[rec.solver];
        s.solver = rec.solver;
        ++s.records;
        time_sum[rec.solver] += std::chrono::duration<double>(rec.solve_time).count();
        if (rec.exact_match) ++match_count[rec.solver];
        instances[rec.instance_id] = {rec.domain, rec.fully_solved_by_reduction};
    }
    for (auto& [name, s] : per_solver) {
        s.avg_solve_seconds = s.records ? time_sum[name] / s.records : 0.0;
        s.accuracy = s.records ? static_cast<double>(match_count[name]) / s.records : 0.0;
        summary.per_solver.push_back(s);
    }
    for (const auto& [id, info] : instances) {
        auto& d = per_domain[info.first];
        d.domain = info.first;
        ++d.unique_count;
        if (info.second) ++d.reduction_solved;
        ++summary.instance_count;
        if (info.second) ++summary.reduction_solved;
    }
    for (auto& [name, d] : per_domain) {
        d.solver_required = d.unique_count - d.reduction_solved;
        summary.per_domain.push_back(d);
    }
    summary.reduction_solved_fraction =
        summary.instance_count
            ? static_cast<double>(summary.reduction_solved) / summary.instance_count
            : 0.0;
    return summary;
}

namespace detail {

inline std::string csv_cell(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string quoted = "\"";
    for (char c : s) {
        if (c == '"') quoted += '"';
        quoted += c;
    }
    return quoted + "\"";
}

inline std::string card_cell(const std::optional<std::size_t>& card, const std::string& status) {
    return card ? std::to_string(*card) : status;
}

}  // namespace detail

inline std::string records_csv_header() {
    return "instance_id,domain,solver,status,cardinality,optimal_cardinality,exact_match,"
           "reduce_time_us,solve_time_us,fully_solved_by_reduction,pre_pairs,post_pairs,"
           "pre_mass,post_mass";
}

inline std::string to_csv(const std::vector<BenchRecord>& records) {
    std::ostringstream out;
    out << records_csv_header() << "\n";
    for (const BenchRecord& rec : records) {
        out << detail::csv_cell(rec.instance_id) << "," << detail::csv_cell(rec.domain) << ","
            << rec.solver << "," << rec.status << ","
            << detail::card_cell(rec.cardinality, rec.status) << ","
            << detail::card_cell(rec.optimal_cardinality, rec.optimal_status) << ","
            << (rec.exact_match ? "true" : "false") << "," << rec.reduce_time.count() << ","
            << rec.solve_time.count() << ","
            << (rec.fully_solved_by_reduction ? "true" : "false") << "," << rec.pre_pairs << ","
            << rec.post_pairs << "," << rec.pre_mass << "," << rec.post_mass << "\n";
    }
    return out.str();
}

inline std::string summary_text(const BenchSummary& summary) {
    std::ostringstream out;
    out << "accuracy = exact cardinality match against oracle '" << summary.oracle << "'\n";
    if (summary.raw_count)
        out << "corpus: " << summary.raw_count << " files, " << summary.unique_count
            << " unique\n";
    out << "instances: " << summary.instance_count << ", solved by reduction alone: "
        << summary.reduction_solved << " (" << std::fixed << std::setprecision(1)
        << summary.reduction_solved_fraction * 100.0 << "%)\n\n";
    out << std::left << std::setw(12) << "solver" << std::right << std::setw(10) << "records"
        << std::setw(16) << "avg time [s]" << std::setw(10) << "accuracy" << "\n";
    for (const SolverSummary& s : summary.per_solver) {
        out << std::left << std::setw(12) << s.solver << std::right << std::setw(10) << s.records
            << std::setw(16) << std::scientific << std::setprecision(2) << s.avg_solve_seconds
            << std::setw(10) << std::fixed << std::setprecision(2) << s.accuracy << "\n";
    }
    out << "\n"
        << std::left << std::setw(16) << "domain" << std::right << std::setw(8) << "unique"
        << std::setw(18) << "reduction-solved" << std::setw(16) << "solver-solved" << "\n";
    for (const DomainSummary& d : summary.per_domain) {
        const double pct =
            d.unique_count ? 100.0 * d.reduction_solved / d.unique_count : 0.0;
        std::ostringstream solved;
        solved << d.reduction_solved << " (" << std::fixed << std::setprecision(1) << pct << "%)";
        std::ostringstream rest;
        rest << d.solver_required << " (" << std::fixed << std::setprecision(1)
             << (d.unique_count ? 100.0 - pct : 0.0) << "%)";
        out << std::left << std::setw(16)
            << (d.domain.empty() ? std::string("(untagged)") : d.domain) << std::right
            << std::setw(8) << d.unique_count << std::setw(18) << solved.str() << std::setw(16)
            << rest.str() << "\n";
    }
    return out.str();
}

inline nlohmann::ordered_json summary_json(const BenchSummary& summary) {
    nlohmann::ordered_json doc;
    doc["oracle"] = summary.oracle;
    doc["accuracy_definition"] = "exact cardinality match against the oracle";
    if (summary.raw_count) {
        doc["raw_files"] = summary.raw_count;
        doc["unique_files"] = summary.unique_count;
    }
    doc["instances"] = summary.instance_count;
    doc["reduction_solved"] = summary.reduction_solved;
    doc["reduction_solved_fraction"] = summary.reduction_solved_fraction;
    doc["solvers"] = nlohmann::ordered_json::array();
    for (const SolverSummary& s : summary.per_solver)
        doc["solvers"].push_back({{"solver", s.solver},
                                  {"records", s.records},
                                  {"avg_time_s", s.avg_solve_seconds},
                                  {"accuracy", s.accuracy}});
    doc["domains"] = nlohmann::ordered_json::array();
    for (const DomainSummary& d : summary.per_domain)
        doc["domains"].push_back({{"domain", d.domain},
                                  {"unique", d.unique_count},
                                  {"reduction_solved", d.reduction_solved},
                                  {"solver_required", d.solver_required}});
    return doc;
}

inline std::string runtime_plot_csv(const BenchSummary& summary) {
    std::ostringstream out;
    out << "solver,avg_runtime_seconds\n";
    for (const SolverSummary& s : summary.per_solver)
        out << s.solver << "," << std::scientific << std::setprecision(6) << s.avg_solve_seconds
            << "\n";
    return out.str();
}

inline void write_text_file(const std::string& path, const std::string& contents) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << contents;
}

/// Emits records.csv, summary.txt, summary.json, runtime_plot.csv into dir.
inline void write_reports(const std::string& dir, const std::vector<BenchRecord>& records,
                          const BenchSummary& summary) {
    std::filesystem::create_directories(dir);
    write_text_file((std::filesystem::path(dir) / "records.csv").string(), to_csv(records));
    write_text_file((std::filesystem::path(dir) / "summary.txt").string(),
                    summary_text(summary));
    write_text_file((std::filesystem::path(dir) / "summary.json").string(),
                    summary_json(summary).dump(2) + "\n");
    write_text_file((std::filesystem::path(dir) / "runtime_plot.csv").string(),
                    runtime_plot_csv(summary));
}

// ---------------------------------------------------------------------------
// external-corpus ingestion

using FormatAdapter = std::function<Instance(const std::string& file_contents)>;

/// Registered converters from foreign on-disk formats to the canonical one.
/// "canonical" is the identity adapter; new formats register under their own
/// name once their schema is known.
inline std::map<std::string, FormatAdapter>& adapter_registry() {
    static std::map<std::string, FormatAdapter> registry = {
        {"canonical", [](const std::string& text) { return parse(text); }},
    };
    return registry;
}

struct IngestResult {
    std::vector<NamedInstance> instances;
    std::vector<std::pair<std::string, std::string>> failures;  // file, error
};

inline IngestResult ingest_external(const std::string& dir, const std::string& adapter_name) {
    const auto& registry = adapter_registry();
    auto it = registry.find(adapter_name);
    if (it == registry.end())
        throw std::invalid_argument("unknown format adapter '" + adapter_name + "'");
    IngestResult result;
    for (const std::string& file : list_instance_files(dir)) {
        try {
            std::ifstream in(file, std::ios::binary);
            if (!in) throw std::runtime_error("cannot open");
            std::ostringstream buf;
            buf << in.rdbuf();
            result.instances.push_back(make_named(it->second(buf.str()), file));
        } catch (const std::exception& e) {
            result.failures.emplace_back(file, e.what());
        }
    }
    return result;
}

}  // namespace scpr
