#pragma once

// Dedup keys: FNV-1a/128 over the canonical serialization.  Canonicalizing
// first makes the fingerprint invariant under pair order and within-set
// order; distinct canonical forms collide only with hash-collision
// probability.  Dedup is deliberately syntactic: instances differing by an
// index relabeling get different fingerprints.

#include <cstdint>
#include <string>
#include <string_view>

#include "scpr/core.hpp"
#include "scpr/io.hpp"

namespace scpr {

namespace detail {

struct U128 {
    std::uint64_t hi = 0;
    std::uint64_t lo = 0;
};

inline U128 fnv1a128(std::string_view bytes) {
    using u128 = unsigned __int128;
    // FNV-1a 128-bit offset basis and prime
    u128 hash = (u128(0x6c62272e07bb0142ull) << 64) | 0x62b821756295c58dull;
    const u128 prime = (u128(1) << 88) + (u128(1) << 8) + 0x3b;
    for (unsigned char c : bytes) {
        hash ^= c;
        hash *= prime;
    }
    return U128{static_cast<std::uint64_t>(hash >> 64), static_cast<std::uint64_t>(hash)};
}

inline std::string hex128(U128 v) {
    static const char digits[] = "0123456789abcdef";
    std::string out(32, '0');
    for (int i = 15; i >= 0; --i) {
        out[i] = digits[v.hi & 0xf];
        v.hi >>= 4;
    }
    for (int i = 31; i >= 16; --i) {
        out[i] = digits[v.lo & 0xf];
        v.lo >>= 4;
    }
    return out;
}

}  // namespace detail

/// 128-bit hex fingerprint of the canonical byte stream.  `name` and
/// `domain` are provenance, not structure, and do not contribute.
inline std::string fingerprint(const Instance& inst) {
    Instance keyed = inst;
    keyed.name.clear();
    keyed.domain.clear();
    return detail::hex128(detail::fnv1a128(serialize(keyed)));
}

}  // namespace scpr
