#pragma once

// Core data model for the Set Covering Problem with Reasons (SCPR).
//
// An instance is a triple (U, R, E): a universe of n elements (conflict
// regions, addressed 0..n-1), a pool of r reasons (theory constraints,
// addressed 0..r-1) and a list of pairs (A_i, R_i).  A selection S of
// reasons "activates" pair i when R_i is a subset of S; the selection is a
// feasible cover when the covering sets A_i of the activated pairs cover
// the whole universe.

#include <algorithm>
#include <chrono>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace scpr {

using Index = std::uint32_t;
using IndexSet = std::vector<Index>;

/// One (A_i, R_i) pair: a covering set of elements and the reason set that
/// must be fully selected before those elements count as covered.
struct Pair {
    IndexSet covering;  // A_i, element indices
    IndexSet reasons;   // R_i, reason indices; may be empty (free pair)

    // lexicographic by (covering, reasons): the canonical pair order
    friend auto operator<=>(const Pair&, const Pair&) = default;
};

struct Instance {
    std::string name;    // optional corpus provenance
    std::string domain;  // optional benchmark-domain tag
    Index universe_size = 0;
    Index num_reasons = 0;
    std::vector<Pair> pairs;

    friend bool operator==(const Instance&, const Instance&) = default;
};

/// Structural validation.  Violations are data, not failures: the report is
/// empty exactly when the instance is well formed.
inline std::vector<std::string> validate(const Instance& inst) {
    std::vector<std::string> report;
    for (std::size_t i = 0; i < inst.pairs.size(); ++i) {
        const Pair& p = inst.pairs[i];
        if (p.covering.empty())
            report.push_back("pair " + std::to_string(i) + ": empty covering set");
        std::vector<char> seen_elem(inst.universe_size, 0);
        for (Index e : p.covering) {
            if (e >= inst.universe_size) {
                report.push_back("pair " + std::to_string(i) + ": element index " +
                                 std::to_string(e) + " out of range (universe_size=" +
                                 std::to_string(inst.universe_size) + ")");
            } else if (seen_elem[e]++) {
                report.push_back("pair " + std::to_string(i) + ": duplicate element index " +
                                 std::to_string(e));
            }
        }
        std::vector<char> seen_reason(inst.num_reasons, 0);
        for (Index q : p.reasons) {
            if (q >= inst.num_reasons) {
                report.push_back("pair " + std::to_string(i) + ": reason index " +
                                 std::to_string(q) + " out of range (num_reasons=" +
                                 std::to_string(inst.num_reasons) + ")");
            } else if (seen_reason[q]++) {
                report.push_back("pair " + std::to_string(i) + ": duplicate reason index " +
                                 std::to_string(q));
            }
        }
    }
    return report;
}

inline bool is_valid(const Instance& inst) { return validate(inst).empty(); }

namespace detail {

inline std::vector<char> selection_flags(const Instance& inst, const IndexSet& selected) {
    std::vector<char> flags(inst.num_reasons, 0);
    for (Index q : selected)
        if (q < inst.num_reasons) flags[q] = 1;
    return flags;
}

inline bool pair_active(const Pair& p, const std::vector<char>& selected_flags) {
    for (Index q : p.reasons)
        if (!selected_flags[q]) return false;
    return true;
}

}  // namespace detail

/// Indices of pairs whose reason set is contained in `selected`.
inline std::vector<std::size_t> activated_pairs(const Instance& inst, const IndexSet& selected) {
    auto flags = detail::selection_flags(inst, selected);
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < inst.pairs.size(); ++i)
        if (detail::pair_active(inst.pairs[i], flags)) out.push_back(i);
    return out;
}

/// Union of the covering sets of all pairs activated by `selected`, sorted.
inline IndexSet covered_elements(const Instance& inst, const IndexSet& selected) {
    auto flags = detail::selection_flags(inst, selected);
    std::vector<char> covered(inst.universe_size, 0);
    for (const Pair& p : inst.pairs)
        if (detail::pair_active(p, flags))
            for (Index e : p.covering) covered[e] = 1;
    IndexSet out;
    for (Index e = 0; e < inst.universe_size; ++e)
        if (covered[e]) out.push_back(e);
    return out;
}

/// True iff the activated covering sets reach every universe element.
inline bool is_feasible_cover(const Instance& inst, const IndexSet& selected) {
    return covered_elements(inst, selected).size() == inst.universe_size;
}

/// Canonical form: sets sorted ascending and duplicate-free, pairs sorted
/// lexicographically by (A, R), exact-duplicate pairs merged.  Idempotent.
inline Instance canonicalize(Instance inst) {
    for (Pair& p : inst.pairs) {
        std::sort(p.covering.begin(), p.covering.end());
        p.covering.erase(std::unique(p.covering.begin(), p.covering.end()), p.covering.end());
        std::sort(p.reasons.begin(), p.reasons.end());
        p.reasons.erase(std::unique(p.reasons.begin(), p.reasons.end()), p.reasons.end());
    }
    std::sort(inst.pairs.begin(), inst.pairs.end());
    inst.pairs.erase(std::unique(inst.pairs.begin(), inst.pairs.end()), inst.pairs.end());
    return inst;
}

struct SearchStats {
    std::uint64_t nodes = 0;
    std::uint64_t iterations = 0;
    std::uint64_t restarts = 0;
};

/// A selected reason set together with its feasibility witness and the
/// producing solver's bookkeeping.
struct Solution {
    IndexSet selected;                        // the set S, sorted
    std::vector<std::size_t> activated;       // pairs with R_i subset of S
    bool proven_optimal = false;              // true only for exact solvers
    std::chrono::microseconds wall_time{0};
    SearchStats stats;

    std::size_t cardinality() const { return selected.size(); }
};

inline Solution make_solution(const Instance& inst, IndexSet selected, bool proven_optimal) {
    std::sort(selected.begin(), selected.end());
    selected.erase(std::unique(selected.begin(), selected.end()), selected.end());
    Solution s;
    s.activated = activated_pairs(inst, selected);
    s.selected = std::move(selected);
    s.proven_optimal = proven_optimal;
    return s;
}

/// Solver verdicts.  `Infeasible` is a proof only when the producing solver
/// is exact; heuristics use it as "no cover found within budget".
enum class SolveStatus { Feasible, Infeasible, Timeout };

struct SolveResult {
    SolveStatus status = SolveStatus::Infeasible;
    Solution solution;        // meaningful when status==Feasible, or as a
                              // non-optimal incumbent on Timeout
    bool has_solution = false;
};

inline SolveResult feasible_result(Solution s) {
    return SolveResult{SolveStatus::Feasible, std::move(s), true};
}

inline SolveResult infeasible_result() { return SolveResult{}; }

}  // namespace scpr
