#pragma once

// Seedable randomness with portable draws.  std::mt19937_64 is fully
// specified by the standard; the distribution helpers below avoid
// std::uniform_int_distribution and friends, whose output is
// implementation-defined.
//
// Stream splitting: whenever several consumers derive randomness from one
// user-facing seed, the per-consumer seed is derive_seed(seed, tag) with a
// stable textual tag.  The bench pipeline tags streams with
// "<instance fingerprint>/<solver name>" so records are reproducible
// independent of scheduling.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <string_view>
#include <vector>

namespace scpr {

inline std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

inline std::uint64_t fnv1a64(std::string_view text) {
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (unsigned char c : text) {
        h ^= c;
        h *= 0x100000001b3ull;
    }
    return h;
}

inline std::uint64_t derive_seed(std::uint64_t seed, std::string_view tag) {
    std::uint64_t state = seed ^ fnv1a64(tag);
    splitmix64(state);
    return splitmix64(state);
}

class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next() { return engine_(); }

    /// Uniform integer in [0, bound).  bound must be positive.
    std::uint64_t below(std::uint64_t bound) {
        // rejection sampling, no modulo bias
        const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
        std::uint64_t v;
        do {
            v = engine_();
        } while (v >= limit);
        return v % bound;
    }

    /// Uniform double in [0, 1).
    double unit() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    /// Uniform integer in [lo, hi].
    std::uint64_t between(std::uint64_t lo, std::uint64_t hi) {
        return lo + below(hi - lo + 1);
    }

    bool chance(double p) { return unit() < p; }

    /// Knuth's product method; adequate for the small means used here.
    std::uint64_t poisson(double mean) {
        const double threshold = std::exp(-mean);
        std::uint64_t k = 0;
        double prod = unit();
        while (prod > threshold) {
            ++k;
            prod *= unit();
        }
        return k;
    }

    /// k distinct values from [0, n), sorted ascending (partial Fisher-Yates).
    std::vector<std::uint32_t> sample_sorted(std::uint32_t n, std::uint32_t k) {
        std::vector<std::uint32_t> pool(n);
        for (std::uint32_t i = 0; i < n; ++i) pool[i] = i;
        for (std::uint32_t i = 0; i < k; ++i) {
            std::uint32_t j = i + static_cast<std::uint32_t>(below(n - i));
            std::swap(pool[i], pool[j]);
        }
        pool.resize(k);
        std::sort(pool.begin(), pool.end());
        return pool;
    }

private:
    std::mt19937_64 engine_;
};

}  // namespace scpr
