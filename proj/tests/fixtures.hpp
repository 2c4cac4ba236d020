#pragma once

// Shared test fixtures and small helpers.

#include <string>
#include <vector>

#include "scpr/core.hpp"
#include "scpr/generator.hpp"

namespace fixtures {

using scpr::Index;
using scpr::IndexSet;
using scpr::Instance;
using scpr::Pair;

inline Instance make_instance(Index n, Index r,
                              std::vector<std::pair<IndexSet, IndexSet>> pairs) {
    Instance inst;
    inst.universe_size = n;
    inst.num_reasons = r;
    for (auto& [a, rs] : pairs) inst.pairs.push_back(Pair{a, rs});
    return inst;
}

/// Two elements, each explained only by a two-reason combination sharing the
/// middle reason; the unique optimum is all three reasons.
inline Instance combination_instance() {
    return make_instance(2, 3, {{{0}, {0, 1}}, {{1}, {1, 2}}});
}

/// Element 0 explained by either of two single reasons, element 1 by a
/// third; optimal cover has two reasons.
inline Instance interchangeable_instance() {
    return make_instance(2, 3, {{{0}, {0}}, {{0}, {1}}, {{1}, {2}}});
}

/// Mixed-preset corpus of small instances for oracle comparisons.  Seeds are
/// offset per preset so the corpus is stable across runs.
inline std::vector<Instance> small_corpus(std::size_t count, std::uint64_t base_seed,
                                          bool include_infeasible = false) {
    std::vector<Instance> corpus;
    std::size_t i = 0;
    while (corpus.size() < count) {
        scpr::GeneratorParams params;
        params.seed = base_seed + i;
        switch (i % 3) {
            case 0:
                params.preset = scpr::Preset::CdcacLike;
                params.universe_size = 3 + i % 13;   // <= 15
                params.num_reasons = 2 + i % 11;     // <= 12
                params.num_pairs = 2 + i % 9;
                break;
            case 1:
                params.preset = scpr::Preset::Uniform;
                params.universe_size = 2 + i % 14;
                params.num_reasons = 1 + i % 12;
                params.num_pairs = 1 + i % 10;
                params.reason_set_min = 0;
                params.reason_set_max = 3;
                break;
            default:
                params.preset = scpr::Preset::Scp;
                params.universe_size = 2 + i % 12;
                params.num_reasons = 1 + i % 12;
                params.num_pairs = params.num_reasons;
                break;
        }
        params.ensure_feasible = !include_infeasible || i % 4 != 3;
        corpus.push_back(scpr::generate(params));
        ++i;
    }
    return corpus;
}

}  // namespace fixtures
