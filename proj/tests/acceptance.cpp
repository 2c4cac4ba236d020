// Acceptance suite: one test case per criterion, each printing a pass/fail
// line.  Run via `ctest -R acceptance` or the scpr_acceptance binary.

#include <catch2/catch_amalgamated.hpp>

#include <filesystem>
#include <iostream>

#include "fixtures.hpp"
#include "scp_reference.hpp"
#include "scpr/scpr.hpp"

using namespace scpr;
using fixtures::combination_instance;
using fixtures::interchangeable_instance;

namespace {

void report(int criterion, bool ok, const std::string& what) {
    std::cout << "criterion " << criterion << ": " << (ok ? "PASS" : "FAIL") << " - " << what
              << std::endl;
}

std::vector<Instance> oracle_corpus_500() {
    return fixtures::small_corpus(500, 20240501, /*include_infeasible=*/true);
}

}  // namespace

TEST_CASE("criterion 1: golden fixtures") {
    bool ok = true;
    const Instance comb = combination_instance();
    ok &= brute_force(comb).solution.cardinality() == 3;
    ok &= solve_ilp(comb).solution.cardinality() == 3;
    ok &= iterative_deepening(comb).solution.cardinality() == 3;
    ok &= solve_maxsat(comb).solution.cardinality() == 3;
    const ReductionOutcome reduced = reduce_to_fixpoint(comb);
    ok &= reduced.fully_solved && reduced.fixed_reasons.size() == 3;

    const Instance pick = interchangeable_instance();
    ok &= brute_force(pick).solution.cardinality() == 2;
    ok &= solve_ilp(pick).solution.cardinality() == 2;
    ok &= iterative_deepening(pick).solution.cardinality() == 2;
    ok &= solve_maxsat(pick).solution.cardinality() == 2;

    report(1, ok, "golden fixtures: combination optimum 3 (reduction-complete), "
                  "interchangeable optimum 2");
    REQUIRE(ok);
}

TEST_CASE("criterion 2: oracle equivalence on 500 seeded instances") {
    const auto corpus = oracle_corpus_500();
    std::size_t agree = 0;
    for (const Instance& inst : corpus) {
        const SolveResult oracle = brute_force(inst);
        const SolveResult ilp = solve_ilp(inst);
        const SolveResult deep = iterative_deepening(inst);
        const SolveResult msat = solve_maxsat(inst);
        const bool statuses = ilp.status == oracle.status && deep.status == oracle.status &&
                              msat.status == oracle.status;
        bool cards = true;
        if (oracle.status == SolveStatus::Feasible) {
            const std::size_t want = oracle.solution.cardinality();
            cards = ilp.solution.cardinality() == want &&
                    deep.solution.cardinality() == want &&
                    msat.solution.cardinality() == want;
        }
        if (statuses && cards) ++agree;
    }
    const bool ok = agree == corpus.size();
    report(2, ok, "exact solvers agree with brute force on " + std::to_string(agree) + "/" +
                      std::to_string(corpus.size()) + " instances");
    REQUIRE(ok);
}

TEST_CASE("criterion 3: reduction soundness with trimming on and off") {
    const auto corpus = oracle_corpus_500();
    std::size_t sound = 0;
    std::size_t total = 0;
    for (bool trimming : {true, false}) {
        for (const Instance& inst : corpus) {
            ++total;
            ReduceConfig config;
            config.enable_reason_trimming = trimming;
            const ReductionOutcome out = reduce_to_fixpoint(inst, config);
            const SolveResult direct = brute_force(inst);
            if (out.fully_solved) {
                if (direct.status == SolveStatus::Feasible &&
                    out.fixed_reasons.size() == direct.solution.cardinality() &&
                    is_feasible_cover(inst, out.fixed_reasons))
                    ++sound;
                continue;
            }
            const SolveResult reduced = solve_ilp(out.reduced);
            if (reduced.status != direct.status) continue;  // infeasibility must carry over
            if (direct.status != SolveStatus::Feasible) {
                ++sound;
                continue;
            }
            const Solution lifted = lift_solution(out, reduced.solution, inst);
            if (is_feasible_cover(inst, lifted.selected) &&
                lifted.cardinality() == direct.solution.cardinality())
                ++sound;
        }
    }
    const bool ok = sound == total;
    report(3, ok, "lifted reduced optima match brute force on " + std::to_string(sound) + "/" +
                      std::to_string(total) + " (instance, trimming) runs");
    REQUIRE(ok);
}

TEST_CASE("criterion 4: SCP specialisation matches classic column reduction") {
    std::size_t matched = 0;
    const std::size_t runs = 200;
    for (std::uint64_t seed = 0; seed < runs; ++seed) {
        GeneratorParams params;
        params.preset = Preset::Scp;
        params.seed = 555000 + seed;
        params.universe_size = 3 + seed % 11;
        params.num_reasons = 2 + seed % 11;
        params.num_pairs = params.num_reasons;
        params.ensure_feasible = seed % 6 != 5;
        const Instance inst = generate(params);

        scp_ref::ScpInstance scp;
        scp.num_rows = inst.universe_size;
        scp.columns.resize(inst.pairs.size());
        for (std::size_t i = 0; i < inst.pairs.size(); ++i)
            scp.columns[i] = inst.pairs[i].covering;

        const scp_ref::ScpReduction classic = scp_ref::reduce_classic(scp);
        const ReductionOutcome out = reduce_to_fixpoint(inst);
        std::set<Index> rows(out.element_map.begin(), out.element_map.end());
        std::set<Index> fixed(out.fixed_reasons.begin(), out.fixed_reasons.end());
        std::set<Index> cols;
        bool singleton = true;
        for (const Pair& p : out.reduced.pairs) {
            if (p.reasons.size() != 1) singleton = false;
            else cols.insert(out.reason_map[p.reasons[0]]);
        }
        bool same = singleton &&
                    rows == std::set<Index>(classic.surviving_rows.begin(),
                                            classic.surviving_rows.end()) &&
                    cols == std::set<Index>(classic.surviving_columns.begin(),
                                            classic.surviving_columns.end()) &&
                    fixed == std::set<Index>(classic.fixed_columns.begin(),
                                             classic.fixed_columns.end());

        const int scp_opt = scp_ref::brute_force_scp(scp);
        const SolveResult ilp = solve_ilp(inst);
        const SolveResult deep = iterative_deepening(inst);
        const SolveResult msat = solve_maxsat(inst);
        const SolveResult brute = brute_force(inst);
        bool exact_ok;
        if (scp_opt < 0) {
            exact_ok = ilp.status == SolveStatus::Infeasible &&
                       deep.status == SolveStatus::Infeasible &&
                       msat.status == SolveStatus::Infeasible &&
                       brute.status == SolveStatus::Infeasible;
        } else {
            const auto want = static_cast<std::size_t>(scp_opt);
            exact_ok = ilp.status == SolveStatus::Feasible &&
                       ilp.solution.cardinality() == want &&
                       deep.solution.cardinality() == want &&
                       msat.solution.cardinality() == want &&
                       brute.solution.cardinality() == want;
        }
        if (same && exact_ok) ++matched;
    }
    const bool ok = matched == runs;
    report(4, ok, "generalised reduction == classic reduction and exact == SCP brute force on " +
                      std::to_string(matched) + "/" + std::to_string(runs) + " instances");
    REQUIRE(ok);
}

TEST_CASE("criterion 5: post-reduction ILP speed on cdcac-like instances") {
    std::size_t residual = 0;
    std::size_t within_10ms = 0;
    bool each_within_100ms = true;
    for (std::uint64_t seed = 0; seed < 1000; ++seed) {
        GeneratorParams params;
        params.seed = 31415000 + seed;
        const Instance inst = generate(params);
        const ReductionOutcome out = reduce_to_fixpoint(inst);
        if (out.fully_solved) continue;
        ++residual;
        const auto start = std::chrono::steady_clock::now();
        const SolveResult res = solve_ilp(out.reduced);
        const auto elapsed = std::chrono::duration_cast<std::chrono::microseconds>(
            std::chrono::steady_clock::now() - start);
        (void)res;
        if (elapsed > std::chrono::milliseconds{100}) each_within_100ms = false;
        if (elapsed <= std::chrono::milliseconds{10}) ++within_10ms;
    }
    const double frac =
        residual ? static_cast<double>(within_10ms) / static_cast<double>(residual) : 1.0;
    const bool ok = each_within_100ms && frac >= 0.99;
    std::ostringstream msg;
    msg << residual << " residual instances of 1000; all within 100 ms: "
        << (each_within_100ms ? "yes" : "no") << "; within 10 ms: " << within_10ms << " ("
        << std::fixed << std::setprecision(1) << frac * 100.0 << "%)";
    report(5, ok, msg.str());
    REQUIRE(ok);
}

TEST_CASE("criterion 6: reduction effectiveness reporting and partition invariant") {
    std::vector<NamedInstance> named;
    for (std::uint64_t seed = 0; seed < 200; ++seed) {
        GeneratorParams params;
        params.seed = 777000 + seed;
        params.preset = static_cast<Preset>(seed % 3);
        if (params.preset != Preset::CdcacLike) {
            params.universe_size = 3 + seed % 10;
            params.num_reasons = 2 + seed % 9;
            params.num_pairs = params.preset == Preset::Scp ? params.num_reasons
                                                            : 2 + seed % 8;
        }
        Instance inst = generate(params);
        named.push_back(make_named(std::move(inst), "gen-" + std::to_string(seed)));
    }
    PipelineOptions opts;
    opts.solvers = {SolverKind::Ilp};
    const auto records = run_pipeline(named, opts);
    const BenchSummary summary = summarize(records, "brute");

    bool partition_ok = summary.per_domain.size() >= 2;
    std::size_t total = 0;
    for (const DomainSummary& d : summary.per_domain) {
        partition_ok &= d.reduction_solved + d.solver_required == d.unique_count;
        total += d.unique_count;
    }
    partition_ok &= total == summary.instance_count;
    const bool fraction_ok =
        summary.reduction_solved_fraction >= 0.0 && summary.reduction_solved_fraction <= 1.0;
    const bool ok = partition_ok && fraction_ok;
    std::ostringstream msg;
    msg << "reduction solved " << summary.reduction_solved << "/" << summary.instance_count
        << " (" << std::fixed << std::setprecision(1) << summary.reduction_solved_fraction * 100.0
        << "%); per-domain partition exact across " << summary.per_domain.size() << " domains";
    report(6, ok, msg.str());
    REQUIRE(ok);
}

TEST_CASE("criterion 7: heuristic feasibility and accuracy") {
    const auto corpus = fixtures::small_corpus(300, 90210, /*include_infeasible=*/false);
    struct Tally {
        std::size_t feasible = 0;
        std::size_t exact = 0;
    };
    std::map<std::string, Tally> tallies;
    std::size_t feasible_instances = 0;
    for (const Instance& inst : corpus) {
        const SolveResult oracle = brute_force(inst);
        REQUIRE(oracle.status == SolveStatus::Feasible);
        ++feasible_instances;
        const std::size_t want = oracle.solution.cardinality();
        const std::uint64_t seed = derive_seed(1, fingerprint(inst));
        const std::vector<std::pair<std::string, SolveResult>> results = {
            {"greedy", greedy(inst)},
            {"sa", simulated_annealing(inst, {}, seed)},
            {"ga", genetic(inst, {}, seed)},
            {"pso", pso(inst, {}, seed)},
            {"mlses", mlses_cc(inst, {}, seed)},
        };
        for (const auto& [name, res] : results) {
            if (res.status == SolveStatus::Feasible &&
                is_feasible_cover(inst, res.solution.selected)) {
                ++tallies[name].feasible;
                if (res.solution.cardinality() == want) ++tallies[name].exact;
            }
        }
    }
    bool ok = true;
    std::ostringstream msg;
    msg << std::fixed << std::setprecision(2);
    for (const auto& [name, tally] : tallies) {
        const double feas = static_cast<double>(tally.feasible) / feasible_instances;
        const double acc = static_cast<double>(tally.exact) / feasible_instances;
        ok &= tally.feasible == feasible_instances;  // 100% feasible returns
        if (name == "greedy" || name == "sa" || name == "ga") ok &= acc >= 0.80;
        msg << name << " feas=" << feas << " acc=" << acc << "; ";
    }
    report(7, ok, msg.str());
    REQUIRE(ok);
}

TEST_CASE("criterion 8: fitness structure over 10,000 samples") {
    Rng rng(271828);
    std::size_t violations = 0;
    std::size_t samples = 0;
    const auto corpus = fixtures::small_corpus(200, 46692, true);
    while (samples < 10000) {
        const Instance& inst = corpus[rng.below(corpus.size())];
        if (inst.num_reasons == 0) continue;
        FitnessEvaluator eval(inst);
        Bitstring a(inst.num_reasons, 0), b(inst.num_reasons, 0);
        for (auto& bit : a) bit = rng.chance(0.5);
        for (auto& bit : b) bit = rng.chance(0.5);
        samples += 2;
        const std::int64_t fa = eval(a);
        const std::int64_t fb = eval(b);
        const bool feas_a = eval.feasible(a);
        const bool feas_b = eval.feasible(b);
        if (feas_a && !feas_b && fa <= fb) ++violations;
        if (feas_b && !feas_a && fb <= fa) ++violations;
        if (feas_a && feas_b) {
            std::int64_t ca = 0, cb = 0;
            for (auto bit : a) ca += bit;
            for (auto bit : b) cb += bit;
            if (ca < cb && fa <= fb) ++violations;
            if (cb < ca && fb <= fa) ++violations;
            if (ca == cb && fa != fb) ++violations;
        }
    }
    const bool ok = violations == 0;
    report(8, ok, "feasible/infeasible separation and strict cardinality ordering, " +
                      std::to_string(violations) + " violations in " +
                      std::to_string(samples) + " samples");
    REQUIRE(ok);
}

TEST_CASE("criterion 9: bench determinism modulo timing") {
    const auto dir = std::filesystem::temp_directory_path() / "scpr_acceptance_corpus";
    std::filesystem::remove_all(dir);
    std::filesystem::create_directories(dir);
    auto corpus = fixtures::small_corpus(40, 60601, true);
    for (std::size_t i = 0; i < corpus.size(); ++i)
        write_instance_file((dir / ("i" + std::to_string(i) + ".json")).string(), corpus[i]);

    auto run_once = [&] {
        const DedupResult dedup = dedup_corpus(dir.string());
        PipelineOptions opts;
        opts.solvers = {SolverKind::Brute, SolverKind::Ilp, SolverKind::Deepening,
                        SolverKind::Maxsat, SolverKind::Greedy, SolverKind::Sa,
                        SolverKind::Ga, SolverKind::Pso, SolverKind::Mlses};
        opts.seed = 7;
        opts.jobs = 4;
        return to_csv(run_pipeline(dedup.unique, opts));
    };
    const std::string first = run_once();
    const std::string second = run_once();

    auto strip = [](const std::string& csv) {
        std::string out;
        std::istringstream in(csv);
        std::string line;
        while (std::getline(in, line)) {
            std::vector<std::string> cells;
            std::istringstream cs(line);
            std::string cell;
            while (std::getline(cs, cell, ',')) cells.push_back(cell);
            for (std::size_t i = 0; i < cells.size(); ++i)
                if (i != 7 && i != 8) out += cells[i] + ",";
            out += "\n";
        }
        return out;
    };
    const bool ok = strip(first) == strip(second);
    std::filesystem::remove_all(dir);
    report(9, ok, "repeated bench runs byte-identical outside the timing columns");
    REQUIRE(ok);
}
