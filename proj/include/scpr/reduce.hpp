#pragma once

// Data reduction for SCPR instances, generalising the classic set-covering
// preprocessing rules:
//
//   unique coverage - an element appearing in exactly one pair forces that
//                     pair's reasons into the fixed set S*; the pair's
//                     elements leave the universe
//   dominance       - pair j is dropped when some pair i covers at least
//                     as much (A_j subset of A_i) for no more cost
//   free-pair propagation - a pair whose reason set is exhausted by S*
//                     covers its elements outright; this is the closure of
//                     unique coverage under the growing S*
//
// Cost comparison for dominance uses the S*-trimmed reason sets
// R' = R \ S*.  Two sufficient conditions are checked:
//   (a) R_i' subset of R_j'      - any selection activating j activates i
//   (b) |R_i'| <= |R_j'| and every reason of R_j' \ R_i' occurs in no other
//       live pair - swapping R_j' for R_i' in any cover never deactivates a
//       third pair and never increases the cost
// Condition (b) is what makes the rule coincide with classic column
// dominance on singleton-reason instances, where every reason is private to
// its pair.  With `enable_reason_trimming=false` dominance compares raw
// reason sets under condition (a) only.
//
// The reduced instance always carries S*-trimmed reason sets, so solving it
// minimises exactly the cost on top of S*, and a reduced solution S' lifts
// to S' ∪ S* with the original optimum's cardinality.

#include <iterator>
#include <optional>
#include <stdexcept>

#include "scpr/core.hpp"

namespace scpr {

struct ReduceConfig {
    bool enable_reason_trimming = true;
    std::uint64_t max_iterations = 0;  // 0 = run to fixpoint
};

enum class ReduceRule { Unique, Dominance, Free };

struct RuleApplication {
    ReduceRule rule;
    std::size_t pair = 0;               // original pair index
    std::optional<Index> element;       // triggering element, for Unique
};

struct ReductionOutcome {
    Instance reduced;                   // compacted index spaces
    IndexSet fixed_reasons;             // S*, original reason indices
    std::vector<Index> element_map;     // reduced element -> original element
    std::vector<Index> reason_map;      // reduced reason -> original reason
    std::vector<RuleApplication> trace;
    bool fully_solved = false;          // reduced universe is empty
};

/// Mutable reduction workspace over original index spaces.
class ReductionState {
public:
    ReductionState(const Instance& inst, ReduceConfig config)
        : config_(config),
          universe_size_(inst.universe_size),
          num_reasons_(inst.num_reasons),
          element_alive_(inst.universe_size, 1),
          fixed_(inst.num_reasons, 0) {
        pairs_.reserve(inst.pairs.size());
        for (const Pair& p : inst.pairs) {
            WorkPair wp;
            wp.covering = p.covering;
            std::sort(wp.covering.begin(), wp.covering.end());
            wp.reasons = p.reasons;
            std::sort(wp.reasons.begin(), wp.reasons.end());
            wp.alive = !wp.covering.empty();
            pairs_.push_back(std::move(wp));
        }
        name_ = inst.name;
        domain_ = inst.domain;
    }

    /// Fires on the lowest element contained in exactly one live pair.
    bool unique_coverage_step() {
        for (Index u = 0; u < universe_size_; ++u) {
            if (!element_alive_[u]) continue;
            std::size_t holder = pairs_.size();
            int count = 0;
            for (std::size_t i = 0; i < pairs_.size() && count < 2; ++i) {
                if (pairs_[i].alive && contains(pairs_[i].covering, u)) {
                    holder = i;
                    ++count;
                }
            }
            if (count == 1) {
                for (Index q : pairs_[holder].reasons) fixed_[q] = 1;
                trace_.push_back({ReduceRule::Unique, holder, u});
                remove_elements(pairs_[holder].covering);
                return true;
            }
        }
        return false;
    }

    /// Removes the first dominated pair (lowest j, then lowest dominating i).
    bool dominance_step() {
        for (std::size_t j = 0; j < pairs_.size(); ++j) {
            if (!pairs_[j].alive) continue;
            for (std::size_t i = 0; i < pairs_.size(); ++i) {
                if (i == j || !pairs_[i].alive) continue;
                if (dominates(i, j) && (!dominates(j, i) || i < j)) {
                    pairs_[j].alive = false;
                    trace_.push_back({ReduceRule::Dominance, j, std::nullopt});
                    return true;
                }
            }
        }
        return false;
    }

    /// Fires on the lowest live pair whose trimmed reason set is empty.
    bool free_pair_step() {
        for (std::size_t i = 0; i < pairs_.size(); ++i) {
            if (!pairs_[i].alive) continue;
            if (!trimmed(pairs_[i].reasons).empty()) continue;
            trace_.push_back({ReduceRule::Free, i, std::nullopt});
            remove_elements(pairs_[i].covering);
            return true;
        }
        return false;
    }

    ReductionOutcome finalize() const {
        ReductionOutcome out;
        out.trace = trace_;
        for (Index q = 0; q < num_reasons_; ++q)
            if (fixed_[q]) out.fixed_reasons.push_back(q);

        std::vector<Index> element_inverse(universe_size_, 0);
        for (Index e = 0; e < universe_size_; ++e) {
            if (element_alive_[e]) {
                element_inverse[e] = static_cast<Index>(out.element_map.size());
                out.element_map.push_back(e);
            }
        }

        std::vector<char> reason_used(num_reasons_, 0);
        for (const WorkPair& wp : pairs_) {
            if (!wp.alive) continue;
            for (Index q : trimmed(wp.reasons)) reason_used[q] = 1;
        }
        std::vector<Index> reason_inverse(num_reasons_, 0);
        for (Index q = 0; q < num_reasons_; ++q) {
            if (reason_used[q]) {
                reason_inverse[q] = static_cast<Index>(out.reason_map.size());
                out.reason_map.push_back(q);
            }
        }

        out.reduced.name = name_;
        out.reduced.domain = domain_;
        out.reduced.universe_size = static_cast<Index>(out.element_map.size());
        out.reduced.num_reasons = static_cast<Index>(out.reason_map.size());
        for (const WorkPair& wp : pairs_) {
            if (!wp.alive) continue;
            Pair p;
            for (Index e : wp.covering) p.covering.push_back(element_inverse[e]);
            for (Index q : trimmed(wp.reasons)) p.reasons.push_back(reason_inverse[q]);
            out.reduced.pairs.push_back(std::move(p));
        }
        out.fully_solved = out.reduced.universe_size == 0;
        return out;
    }

private:
    struct WorkPair {
        IndexSet covering;  // live elements only, sorted
        IndexSet reasons;   // raw, sorted
        bool alive = true;
    };

    static bool contains(const IndexSet& set, Index v) {
        return std::binary_search(set.begin(), set.end(), v);
    }

    IndexSet trimmed(const IndexSet& reasons) const {
        IndexSet out;
        for (Index q : reasons)
            if (!fixed_[q]) out.push_back(q);
        return out;
    }

    void remove_elements(IndexSet doomed) {
        for (Index e : doomed) element_alive_[e] = 0;
        for (WorkPair& wp : pairs_) {
            if (!wp.alive) continue;
            wp.covering.erase(std::remove_if(wp.covering.begin(), wp.covering.end(),
                                             [&](Index e) { return !element_alive_[e]; }),
                              wp.covering.end());
            if (wp.covering.empty()) wp.alive = false;
        }
    }

    bool dominates(std::size_t i, std::size_t j) const {
        const WorkPair& pi = pairs_[i];
        const WorkPair& pj = pairs_[j];
        // A_j must be a subset of A_i
        if (!std::includes(pi.covering.begin(), pi.covering.end(),
                           pj.covering.begin(), pj.covering.end()))
            return false;
        const IndexSet ri = config_.enable_reason_trimming ? trimmed(pi.reasons) : pi.reasons;
        const IndexSet rj = config_.enable_reason_trimming ? trimmed(pj.reasons) : pj.reasons;
        if (std::includes(rj.begin(), rj.end(), ri.begin(), ri.end())) return true;
        if (!config_.enable_reason_trimming) return false;
        if (ri.size() > rj.size()) return false;
        // reasons unique to pair j must not occur in any other live pair
        IndexSet extra;
        std::set_difference(rj.begin(), rj.end(), ri.begin(), ri.end(),
                            std::back_inserter(extra));
        for (std::size_t k = 0; k < pairs_.size(); ++k) {
            if (k == j || !pairs_[k].alive) continue;
            const IndexSet rk = trimmed(pairs_[k].reasons);
            IndexSet overlap;
            std::set_intersection(rk.begin(), rk.end(), extra.begin(), extra.end(),
                                  std::back_inserter(overlap));
            if (!overlap.empty()) return false;
        }
        return true;
    }

    ReduceConfig config_;
    Index universe_size_;
    Index num_reasons_;
    std::vector<char> element_alive_;
    std::vector<char> fixed_;
    std::vector<WorkPair> pairs_;
    std::vector<RuleApplication> trace_;
    std::string name_;
    std::string domain_;
};

/// Alternates unique coverage, dominance and free-pair propagation until no
/// rule fires.  Terminates: every application strictly shrinks the universe,
/// the pair list, or the trimmed reason mass.
inline ReductionOutcome reduce_to_fixpoint(const Instance& inst, ReduceConfig config = {}) {
    ReductionState state(inst, config);
    std::uint64_t rounds = 0;
    bool changed = true;
    while (changed) {
        if (config.max_iterations && ++rounds > config.max_iterations) break;
        changed = false;
        while (state.unique_coverage_step()) changed = true;
        while (state.dominance_step()) changed = true;
        while (state.free_pair_step()) changed = true;
    }
    return state.finalize();
}

/// Maps a solution of the reduced instance back to the original reason
/// space, prepending the fixed reasons S*.
inline Solution lift_solution(const ReductionOutcome& outcome, const Solution& reduced_solution) {
    if (!is_feasible_cover(outcome.reduced, reduced_solution.selected))
        throw std::invalid_argument("reduced solution is not a feasible cover of the reduced instance");
    IndexSet lifted = outcome.fixed_reasons;
    for (Index q : reduced_solution.selected) lifted.push_back(outcome.reason_map[q]);
    std::sort(lifted.begin(), lifted.end());
    lifted.erase(std::unique(lifted.begin(), lifted.end()), lifted.end());
    Solution out;
    out.selected = std::move(lifted);
    out.proven_optimal = reduced_solution.proven_optimal;
    out.stats = reduced_solution.stats;
    out.wall_time = reduced_solution.wall_time;
    return out;
}

/// As above, with the activation witness recomputed against the original
/// instance.
inline Solution lift_solution(const ReductionOutcome& outcome, const Solution& reduced_solution,
                              const Instance& original) {
    Solution out = lift_solution(outcome, reduced_solution);
    out.activated = activated_pairs(original, out.selected);
    return out;
}

inline std::string to_string(ReduceRule rule) {
    switch (rule) {
        case ReduceRule::Unique: return "unique";
        case ReduceRule::Dominance: return "dominance";
        case ReduceRule::Free: return "free";
    }
    return "?";
}

/// One line per rule application: `rule=<id> pair=<i> [element=<u>]`.
inline std::string format_trace(const std::vector<RuleApplication>& trace) {
    std::string out;
    for (const RuleApplication& app : trace) {
        out += "rule=" + to_string(app.rule) + " pair=" + std::to_string(app.pair);
        if (app.element) out += " element=" + std::to_string(*app.element);
        out += "\n";
    }
    return out;
}

}  // namespace scpr
