#pragma once

// Exhaustive oracle: enumerates reason subsets by increasing cardinality,
// lexicographically within each cardinality, and returns the first feasible
// cover.  Intended as the reference other solvers are scored against.

#include <stdexcept>

#include "scpr/core.hpp"
#include "scpr/cover_state.hpp"
#include "scpr/deadline.hpp"

namespace scpr {

struct BruteForceOptions {
    std::optional<std::size_t> limit;  // largest cardinality to try
    Index max_reasons = 25;            // safety bound on the pool size
    bool force = false;                // search anyway above the bound
    Deadline deadline;
};

namespace detail {

inline bool brute_combinations(CoverState& state, Index next, std::size_t remaining,
                               std::uint64_t& nodes, const Deadline& deadline, bool& timed_out) {
    if (remaining == 0) {
        ++nodes;
        if ((nodes & 0x3ff) == 0 && deadline.expired()) {
            timed_out = true;
            return false;
        }
        return state.covered();
    }
    const Index r = state.instance().num_reasons;
    for (Index q = next; q + remaining <= r; ++q) {
        state.select(q);
        if (brute_combinations(state, q + 1, remaining - 1, nodes, deadline, timed_out))
            return true;
        state.deselect(q);
        if (timed_out) return false;
    }
    return false;
}

}  // namespace detail

inline SolveResult brute_force(const Instance& inst, BruteForceOptions opts = {}) {
    if (inst.num_reasons > opts.max_reasons && !opts.force)
        throw std::invalid_argument("brute_force: " + std::to_string(inst.num_reasons) +
                                    " reasons exceeds the safety bound of " +
                                    std::to_string(opts.max_reasons) + " (use force)");
    Stopwatch watch;
    if (opts.deadline.expired()) return SolveResult{SolveStatus::Timeout, {}, false};
    CoverState state(inst);
    std::uint64_t nodes = 0;
    const std::size_t max_k =
        std::min<std::size_t>(inst.num_reasons, opts.limit.value_or(inst.num_reasons));
    bool timed_out = false;
    for (std::size_t k = 0; k <= max_k; ++k) {
        if (detail::brute_combinations(state, 0, k, nodes, opts.deadline, timed_out)) {
            Solution sol = make_solution(inst, state.selection(), true);
            sol.stats.nodes = nodes;
            sol.wall_time = watch.elapsed();
            return feasible_result(std::move(sol));
        }
        if (timed_out) return SolveResult{SolveStatus::Timeout, {}, false};
    }
    return infeasible_result();
}

}  // namespace scpr
