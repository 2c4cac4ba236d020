#include <catch2/catch_amalgamated.hpp>

#include "fixtures.hpp"
#include "scpr/fingerprint.hpp"
#include "scpr/generator.hpp"
#include "scpr/io.hpp"
#include "scpr/rng.hpp"

using namespace scpr;
using fixtures::combination_instance;
using fixtures::make_instance;

TEST_CASE("serialize/parse round-trip preserves canonical form") {
    const Instance inst = combination_instance();
    const std::string doc = serialize(inst);
    CHECK(doc.back() == '\n');
    const Instance back = parse(doc);
    CHECK(canonicalize(back) == canonicalize(inst));
    CHECK(serialize(back) == doc);  // bit-exact on canonical form
}

TEST_CASE("parse reports malformed syntax") {
    CHECK_THROWS_AS(parse("{not json"), ParseError);
    CHECK_THROWS_WITH(parse("[]"), Catch::Matchers::ContainsSubstring("object"));
}

TEST_CASE("parse reports missing fields") {
    CHECK_THROWS_WITH(parse(R"({"universe_size": 1})"),
                      Catch::Matchers::ContainsSubstring("num_reasons"));
    CHECK_THROWS_WITH(parse(R"({"universe_size": 1, "num_reasons": 1})"),
                      Catch::Matchers::ContainsSubstring("pairs"));
}

TEST_CASE("parse names the offending pair on range violations") {
    const char* doc =
        R"({"universe_size": 2, "num_reasons": 1, "pairs": [{"A": [0], "R": [0]}, {"A": [7], "R": [0]}]})";
    CHECK_THROWS_WITH(parse(doc), Catch::Matchers::ContainsSubstring("pairs[1].A"));
}

TEST_CASE("empty-pairs document with a non-empty universe parses") {
    const Instance inst = parse(R"({"universe_size": 3, "num_reasons": 0, "pairs": []})");
    CHECK(inst.universe_size == 3);
    CHECK(inst.pairs.empty());
    CHECK_FALSE(is_feasible_cover(inst, {}));  // infeasible, but representable
}

TEST_CASE("fingerprint is invariant under permutations") {
    const Instance inst = combination_instance();
    Instance permuted = inst;
    std::swap(permuted.pairs[0], permuted.pairs[1]);
    std::reverse(permuted.pairs[0].reasons.begin(), permuted.pairs[0].reasons.end());
    CHECK(fingerprint(permuted) == fingerprint(inst));
    CHECK(fingerprint(canonicalize(inst)) == fingerprint(inst));
}

TEST_CASE("fingerprint separates differing canonical forms") {
    // seeded pairs of instances differing by one extra pair
    std::size_t checked = 0;
    for (std::uint64_t seed = 0; seed < 1000; ++seed) {
        GeneratorParams params;
        params.seed = seed;
        params.universe_size = 6;
        params.num_reasons = 5;
        params.num_pairs = 5;
        const Instance a = generate(params);
        Instance b = a;
        Rng rng(seed ^ 0xabcdef);
        Pair extra;
        extra.covering = {static_cast<Index>(rng.below(b.universe_size))};
        extra.reasons = {static_cast<Index>(rng.below(b.num_reasons))};
        b.pairs.push_back(extra);
        if (canonicalize(a) == canonicalize(b)) continue;  // duplicate pair drawn
        ++checked;
        CHECK(fingerprint(a) != fingerprint(b));
    }
    CHECK(checked > 900);
}

TEST_CASE("fingerprint ignores provenance metadata") {
    Instance a = combination_instance();
    Instance b = a;
    b.name = "other-name";
    b.domain = "other-domain";
    CHECK(fingerprint(a) == fingerprint(b));
}

TEST_CASE("file round-trip", "[io]") {
    const auto dir = std::filesystem::temp_directory_path() / "scpr_io_test";
    std::filesystem::create_directories(dir);
    const auto path = (dir / "inst.json").string();
    const Instance inst = combination_instance();
    write_instance_file(path, inst);
    CHECK(canonicalize(read_instance_file(path)) == canonicalize(inst));
    std::filesystem::remove_all(dir);
}
