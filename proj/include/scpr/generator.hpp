#pragma once

// Seeded synthetic instance generator.  Three presets:
//
//   uniform    - counts taken literally, covering/reason set sizes drawn
//                uniformly from small ranges
//   cdcac-like - counts of 0 are drawn from distributions calibrated to
//                conflict-covering corpora (universe mean 9.2, reason-pool
//                mean 6.8, pair count Poisson around the universe size);
//                reason sets of size 1-3 weighted toward combinations
//   scp        - singleton reason sets, pair i tied to reason i mod r
//
// Output is a pure function of the params (mt19937_64 plus portable draw
// helpers, no libc distributions).

#include <stdexcept>
#include <string>

#include "scpr/core.hpp"
#include "scpr/rng.hpp"

namespace scpr {

enum class Preset { Uniform, CdcacLike, Scp };

inline std::string to_string(Preset p) {
    switch (p) {
        case Preset::Uniform: return "uniform";
        case Preset::CdcacLike: return "cdcac-like";
        case Preset::Scp: return "scp";
    }
    return "?";
}

inline Preset preset_from_string(const std::string& s) {
    if (s == "uniform") return Preset::Uniform;
    if (s == "cdcac-like") return Preset::CdcacLike;
    if (s == "scp") return Preset::Scp;
    throw std::invalid_argument("unknown preset '" + s + "'");
}

struct GeneratorParams {
    // 0 means "preset default": drawn for cdcac-like, literal zero otherwise.
    Index universe_size = 0;
    Index num_reasons = 0;
    Index num_pairs = 0;
    Index reason_set_min = 1;   // reason set size range (clamped to the pool)
    Index reason_set_max = 3;
    Preset preset = Preset::CdcacLike;
    bool ensure_feasible = true;
    std::uint64_t seed = 0;
};

inline void check_params(const GeneratorParams& params) {
    if (params.reason_set_min > params.reason_set_max)
        throw std::invalid_argument("reason_set_min > reason_set_max");
}

/// Deterministic instance for the given params.  Throws when feasibility is
/// requested but unachievable (a non-empty universe with no pairs to patch).
inline Instance generate(const GeneratorParams& params) {
    check_params(params);
    Rng rng(derive_seed(params.seed, "generate/" + to_string(params.preset)));

    Index n = params.universe_size;
    Index r = params.num_reasons;
    Index m = params.num_pairs;
    if (params.preset == Preset::CdcacLike) {
        // corpus-calibrated draws for unspecified counts
        if (n == 0) n = static_cast<Index>(std::max<std::uint64_t>(1, rng.poisson(9.2)));
        if (r == 0) r = static_cast<Index>(std::max<std::uint64_t>(1, rng.poisson(6.8)));
        if (m == 0) m = static_cast<Index>(std::max<std::uint64_t>(1, rng.poisson(n)));
    }
    if (m == 0 && n > 0 && params.ensure_feasible)
        throw std::invalid_argument("cannot ensure feasibility with num_pairs=0 and a non-empty universe");
    if (m > 0 && n == 0)
        throw std::invalid_argument("pairs require a non-empty universe (covering sets may not be empty)");

    Instance inst;
    inst.universe_size = n;
    inst.num_reasons = r;
    inst.name = to_string(params.preset) + "-" + std::to_string(params.seed);
    inst.domain = to_string(params.preset);

    const Index cover_max = std::min<Index>(3, n);
    for (Index i = 0; i < m; ++i) {
        Pair p;
        const Index asize = static_cast<Index>(rng.between(1, cover_max));
        p.covering = rng.sample_sorted(n, asize);
        if (params.preset == Preset::Scp) {
            if (r > 0) p.reasons = {i % r};
        } else {
            Index rsize;
            if (params.preset == Preset::CdcacLike) {
                // sizes 1..3, weighted toward multi-reason combinations
                const double roll = rng.unit();
                rsize = roll < 0.30 ? 1 : roll < 0.75 ? 2 : 3;
            } else {
                rsize = static_cast<Index>(rng.between(params.reason_set_min, params.reason_set_max));
            }
            rsize = std::min(rsize, r);
            p.reasons = rng.sample_sorted(r, rsize);
        }
        inst.pairs.push_back(std::move(p));
    }

    if (params.ensure_feasible && n > 0) {
        std::vector<char> covered(n, 0);
        for (const Pair& p : inst.pairs)
            for (Index e : p.covering) covered[e] = 1;
        for (Index e = 0; e < n; ++e) {
            if (covered[e]) continue;
            Pair& host = inst.pairs[rng.below(inst.pairs.size())];
            host.covering.insert(
                std::lower_bound(host.covering.begin(), host.covering.end(), e), e);
        }
    }
    return inst;
}

}  // namespace scpr
