#pragma once

// Penalised maximisation objective shared by the metaheuristics:
//
//   phi(y) = (r - sum y_i) + a * (# covered elements),  a = r + 1
//
// With a = r+1 every covering bitstring scores at least n*(r+1) while any
// non-covering bitstring stays below it, so maximising phi first enforces
// coverage and then minimises the selection size.

#include "scpr/core.hpp"

namespace scpr {

using Bitstring = std::vector<std::uint8_t>;

struct FitnessParams {
    Index penalty_weight = 1;   // a
    Index num_constraints = 0;  // l, one coverage constraint per element

    static FitnessParams for_instance(const Instance& inst) {
        return FitnessParams{inst.num_reasons + 1, inst.universe_size};
    }
};

inline Bitstring to_bitstring(const Instance& inst, const IndexSet& selected) {
    Bitstring bits(inst.num_reasons, 0);
    for (Index q : selected) bits[q] = 1;
    return bits;
}

inline IndexSet to_selection(const Bitstring& bits) {
    IndexSet out;
    for (Index q = 0; q < bits.size(); ++q)
        if (bits[q]) out.push_back(q);
    return out;
}

/// Allocation-free repeated evaluation against one instance.
class FitnessEvaluator {
public:
    explicit FitnessEvaluator(const Instance& inst)
        : inst_(&inst), covered_(inst.universe_size, 0) {}

    Index covered_count(const Bitstring& bits) const {
        std::fill(covered_.begin(), covered_.end(), 0);
        Index count = 0;
        for (const Pair& p : inst_->pairs) {
            bool active = true;
            for (Index q : p.reasons)
                if (!bits[q]) { active = false; break; }
            if (!active) continue;
            for (Index e : p.covering)
                if (!covered_[e]) {
                    covered_[e] = 1;
                    ++count;
                }
        }
        return count;
    }

    bool feasible(const Bitstring& bits) const {
        return covered_count(bits) == inst_->universe_size;
    }

    std::int64_t operator()(const Bitstring& bits) const {
        const std::int64_t r = inst_->num_reasons;
        std::int64_t ones = 0;
        for (std::uint8_t b : bits) ones += b;
        return r - ones + static_cast<std::int64_t>(r + 1) * covered_count(bits);
    }

    const Instance& instance() const { return *inst_; }

private:
    const Instance* inst_;
    mutable std::vector<char> covered_;
};

inline std::int64_t fitness(const Instance& inst, const Bitstring& bits) {
    return FitnessEvaluator(inst)(bits);
}

}  // namespace scpr
