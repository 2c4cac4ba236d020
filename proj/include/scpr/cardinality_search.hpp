#pragma once

// Cardinality iterative deepening: for k = 0, 1, ..., r search for a
// feasible selection of exactly k reasons.  The first hit is optimal by
// construction.  The per-k search is a lexicographic combination DFS pruned
// by the per-element minimum deficit (some uncovered element still needs
// more reasons than the remaining slots allow).

#include "scpr/core.hpp"
#include "scpr/cover_state.hpp"
#include "scpr/deadline.hpp"

namespace scpr {

namespace detail {

inline Index max_element_deficit(const CoverState& state) {
    const Instance& inst = state.instance();
    Index worst = 0;
    for (Index e = 0; e < inst.universe_size; ++e) {
        if (state.element_covered(e)) continue;
        Index cheapest = inst.num_reasons + 1;
        for (std::size_t k : state.pairs_of_element(e))
            cheapest = std::min(cheapest, state.missing(k));
        worst = std::max(worst, cheapest);
    }
    return worst;  // num_reasons+1 signals a stranded element
}

inline bool deepening_dfs(CoverState& state, Index next, std::size_t slots,
                          std::uint64_t& nodes, const Deadline& deadline, bool& timed_out) {
    ++nodes;
    if ((nodes & 0x3ff) == 0 && deadline.expired()) {
        timed_out = true;
        return false;
    }
    if (state.covered()) return true;
    if (max_element_deficit(state) > slots) return false;
    const Index r = state.instance().num_reasons;
    for (Index q = next; q + slots <= r; ++q) {
        state.select(q);
        if (deepening_dfs(state, q + 1, slots - 1, nodes, deadline, timed_out)) return true;
        state.deselect(q);
        if (timed_out) return false;
    }
    return false;
}

}  // namespace detail

inline SolveResult iterative_deepening(const Instance& inst,
                                       std::optional<std::chrono::milliseconds> time_limit = {}) {
    Stopwatch watch;
    const Deadline deadline = Deadline::after(time_limit);
    if (deadline.expired()) return SolveResult{SolveStatus::Timeout, {}, false};
    CoverState state(inst);
    std::uint64_t nodes = 0;
    bool timed_out = false;
    for (Index k = 0; k <= inst.num_reasons; ++k) {
        if (detail::deepening_dfs(state, 0, k, nodes, deadline, timed_out)) {
            Solution sol = make_solution(inst, state.selection(), true);
            sol.stats.nodes = nodes;
            sol.stats.iterations = k + 1;  // deepening rounds entered
            sol.wall_time = watch.elapsed();
            return feasible_result(std::move(sol));
        }
        if (timed_out) return SolveResult{SolveStatus::Timeout, {}, false};
    }
    return infeasible_result();
}

}  // namespace scpr
