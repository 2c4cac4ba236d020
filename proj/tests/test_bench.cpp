#include <catch2/catch_amalgamated.hpp>

#include <filesystem>
#include <fstream>

#include "fixtures.hpp"
#include "scpr/bench.hpp"

using namespace scpr;
using fixtures::combination_instance;
using fixtures::make_instance;

namespace {

struct TempDir {
    std::filesystem::path path;
    explicit TempDir(const std::string& tag) {
        path = std::filesystem::temp_directory_path() / ("scpr_bench_" + tag);
        std::filesystem::remove_all(path);
        std::filesystem::create_directories(path);
    }
    ~TempDir() { std::filesystem::remove_all(path); }
    std::string str() const { return path.string(); }
    std::string file(const std::string& name) const { return (path / name).string(); }
};

std::vector<std::string> strip_timing_columns(const std::string& csv) {
    std::vector<std::string> rows;
    std::istringstream in(csv);
    std::string line;
    while (std::getline(in, line)) {
        std::vector<std::string> cells;
        std::istringstream cell_in(line);
        std::string cell;
        while (std::getline(cell_in, cell, ',')) cells.push_back(cell);
        REQUIRE(cells.size() == 14);
        cells[7] = cells[8] = "-";  // reduce_time_us, solve_time_us
        std::string joined;
        for (const auto& c : cells) joined += c + ",";
        rows.push_back(joined);
    }
    return rows;
}

}  // namespace

TEST_CASE("dedup groups permuted duplicates") {
    TempDir dir("dedup");
    const Instance inst = combination_instance();
    Instance permuted = inst;
    std::swap(permuted.pairs[0], permuted.pairs[1]);
    write_instance_file(dir.file("a.json"), inst);
    write_instance_file(dir.file("b.json"), permuted);
    write_instance_file(dir.file("c.json"), make_instance(1, 1, {{{0}, {0}}}));

    const DedupResult result = dedup_corpus(dir.str());
    CHECK(result.raw_count == 3);
    CHECK(result.unique.size() == 2);
    REQUIRE(result.groups.size() == 2);
    bool found_pair_group = false;
    for (const DuplicateGroup& g : result.groups) {
        if (g.members.size() == 2) {
            found_pair_group = true;
            CHECK(g.representative == dir.file("a.json"));
        }
    }
    CHECK(found_pair_group);
}

TEST_CASE("dedup keeps distinct seeded instances distinct") {
    TempDir dir("dedup_distinct");
    const auto corpus = fixtures::small_corpus(20, 31337);
    for (std::size_t i = 0; i < corpus.size(); ++i)
        write_instance_file(dir.file("inst" + std::to_string(i) + ".json"), corpus[i]);
    std::set<std::string> prints;
    for (const Instance& inst : corpus) prints.insert(fingerprint(inst));
    const DedupResult result = dedup_corpus(dir.str());
    CHECK(result.unique.size() == prints.size());
}

TEST_CASE("dedup skips malformed files and continues") {
    TempDir dir("dedup_skip");
    write_instance_file(dir.file("good.json"), combination_instance());
    std::ofstream(dir.file("broken.json")) << "{nope";
    const DedupResult result = dedup_corpus(dir.str());
    CHECK(result.unique.size() == 1);
    REQUIRE(result.skipped.size() == 1);
    CHECK(result.skipped[0].first == dir.file("broken.json"));
}

TEST_CASE("keep-duplicates retains every parseable file") {
    TempDir dir("dedup_keep");
    const Instance inst = combination_instance();
    write_instance_file(dir.file("a.json"), inst);
    write_instance_file(dir.file("b.json"), inst);
    const DedupResult result = dedup_corpus(dir.str(), /*keep_duplicates=*/true);
    CHECK(result.unique.size() == 2);
    CHECK(result.raw_count == 2);
}

TEST_CASE("pipeline records a reduction-solved instance for every solver") {
    PipelineOptions opts;
    opts.solvers = {SolverKind::Ilp, SolverKind::Greedy};
    const auto records =
        run_pipeline({make_named(combination_instance(), "comb")}, opts);
    REQUIRE(records.size() == 2);
    for (const BenchRecord& rec : records) {
        CHECK(rec.fully_solved_by_reduction);
        CHECK(rec.cardinality == std::size_t{3});
        CHECK(rec.solve_time.count() == 0);
        CHECK(rec.exact_match);
        CHECK(rec.pre_pairs == 2);
        CHECK(rec.post_pairs == 0);
    }
}

TEST_CASE("pipeline scores exact solvers perfectly against the oracle") {
    const auto corpus = fixtures::small_corpus(60, 1111, true);
    std::vector<NamedInstance> named;
    for (const Instance& inst : corpus) named.push_back(make_named(inst, inst.name));
    PipelineOptions opts;
    opts.solvers = {SolverKind::Ilp, SolverKind::Deepening, SolverKind::Maxsat};
    opts.oracle = SolverKind::Brute;
    opts.jobs = 4;
    const auto records = run_pipeline(named, opts);
    REQUIRE(records.size() == named.size() * 3);
    for (const BenchRecord& rec : records) {
        CAPTURE(rec.instance_id, rec.solver);
        CHECK(rec.exact_match);
        CHECK(rec.post_pairs <= rec.pre_pairs);
        CHECK(rec.post_mass <= rec.pre_mass);
    }
}

TEST_CASE("pipeline honours a zero time limit with a timeout marker") {
    // irreducible instance so the solver actually runs
    const Instance inst = make_instance(
        2, 3, {{{0}, {0, 1}}, {{0}, {1, 2}}, {{1}, {0, 2}}, {{1}, {0, 1}}});
    PipelineOptions opts;
    opts.solvers = {SolverKind::Ilp};
    opts.time_limit = std::chrono::milliseconds{0};
    const auto records = run_pipeline({make_named(inst, "hard")}, opts);
    REQUIRE(records.size() == 1);
    CHECK(records[0].status == "timeout");
    CHECK_FALSE(records[0].cardinality.has_value());
}

TEST_CASE("pipeline rejects heuristic oracles") {
    PipelineOptions opts;
    opts.solvers = {SolverKind::Ilp};
    opts.oracle = SolverKind::Greedy;
    CHECK_THROWS_AS(run_pipeline({}, opts), std::invalid_argument);
}

TEST_CASE("summarize partitions instances per domain") {
    auto corpus = fixtures::small_corpus(30, 5150);
    std::vector<NamedInstance> named;
    for (std::size_t i = 0; i < corpus.size(); ++i) {
        corpus[i].domain = i % 2 ? "alpha" : "beta";
        named.push_back(make_named(corpus[i], "i" + std::to_string(i)));
    }
    PipelineOptions opts;
    opts.solvers = {SolverKind::Ilp, SolverKind::Greedy};
    const auto records = run_pipeline(named, opts);
    const BenchSummary summary = summarize(records, "brute");
    CHECK(summary.instance_count == named.size());
    std::size_t total = 0;
    for (const DomainSummary& d : summary.per_domain) {
        CHECK(d.reduction_solved + d.solver_required == d.unique_count);
        total += d.unique_count;
    }
    CHECK(total == named.size());
    for (const SolverSummary& s : summary.per_solver) {
        CHECK(s.records == named.size());
        CHECK(s.accuracy >= 0.0);
        CHECK(s.accuracy <= 1.0);
    }
    const std::string text = summary_text(summary);
    CHECK(text.find("alpha") != std::string::npos);
    CHECK(text.find("accuracy = exact cardinality match") != std::string::npos);
}

TEST_CASE("report files are written") {
    TempDir dir("reports");
    PipelineOptions opts;
    opts.solvers = {SolverKind::Ilp};
    const auto records = run_pipeline({make_named(combination_instance(), "c")}, opts);
    write_reports(dir.str(), records, summarize(records, "brute"));
    CHECK(std::filesystem::exists(dir.file("records.csv")));
    CHECK(std::filesystem::exists(dir.file("summary.txt")));
    CHECK(std::filesystem::exists(dir.file("summary.json")));
    CHECK(std::filesystem::exists(dir.file("runtime_plot.csv")));
}

TEST_CASE("pipeline runs are reproducible modulo timing") {
    auto corpus = fixtures::small_corpus(25, 8080, true);
    std::vector<NamedInstance> named;
    for (const Instance& inst : corpus) named.push_back(make_named(inst, inst.name));
    PipelineOptions opts;
    opts.solvers = {SolverKind::Ilp, SolverKind::Sa, SolverKind::Ga, SolverKind::Mlses};
    opts.seed = 99;
    opts.jobs = 4;
    const auto first = strip_timing_columns(to_csv(run_pipeline(named, opts)));
    const auto second = strip_timing_columns(to_csv(run_pipeline(named, opts)));
    CHECK(first == second);
}

TEST_CASE("ingest via the canonical adapter preserves fingerprints") {
    TempDir source("ingest_src");
    const auto corpus = fixtures::small_corpus(100, 64);
    std::vector<std::string> prints;
    for (std::size_t i = 0; i < corpus.size(); ++i) {
        write_instance_file(source.file("x" + std::to_string(i) + ".json"), corpus[i]);
        prints.push_back(fingerprint(corpus[i]));
    }
    const IngestResult result = ingest_external(source.str(), "canonical");
    CHECK(result.failures.empty());
    REQUIRE(result.instances.size() == corpus.size());
    std::multiset<std::string> got, want(prints.begin(), prints.end());
    for (const NamedInstance& named : result.instances) got.insert(named.fingerprint);
    CHECK(got == want);
}

TEST_CASE("ingest reports unconvertible files") {
    TempDir dir("ingest_bad");
    write_instance_file(dir.file("ok.json"), combination_instance());
    std::ofstream(dir.file("bad.json")) << "not json";
    const IngestResult result = ingest_external(dir.str(), "canonical");
    CHECK(result.instances.size() == 1);
    CHECK(result.failures.size() == 1);
}

TEST_CASE("ingest rejects unknown adapters") {
    TempDir dir("ingest_unknown");
    CHECK_THROWS_AS(ingest_external(dir.str(), "zenodo-v1"), std::invalid_argument);
}
