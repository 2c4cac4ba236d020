#pragma once

// Partial MaxSAT encoding of SCPR and an exact engine for it.
//
// Variables: y_i per reason, u_k per pair with a non-empty reason set.
// Hard clauses:   per element covered by no free pair:  (u_{k1} | ... )
//                 per pair k, reason i in R_k:          (~u_k | y_i)
//                 per pair k:                           (u_k | ~y_{i1} | ...)
// Soft clauses:   (~y_i) with weight 1, so the violation count equals the
// number of selected reasons.
//
// The engine is a branch-and-bound DPLL: branch on y variables (false
// first), unit-propagate hard clauses - which pins every u once its factors
// are assigned - and prune branches whose violation count reaches the
// incumbent.  It always returns a minimum-violation model or an
// infeasibility verdict, never an approximation.

#include <stdexcept>

#include "scpr/core.hpp"
#include "scpr/deadline.hpp"

namespace scpr {

// Literal encoding: variable v as v+1, negation as -(v+1).
using Literal = int;
using Clause = std::vector<Literal>;

struct WeightedClauseSet {
    std::size_t num_vars = 0;   // y block first, then u block
    Index num_reasons = 0;      // size of the y block
    std::vector<Clause> hard;
    std::vector<Clause> soft;   // unit (~y_i), weight 1 each
};

inline WeightedClauseSet encode_maxsat(const Instance& inst) {
    WeightedClauseSet cs;
    cs.num_reasons = inst.num_reasons;
    std::vector<int> pair_u(inst.pairs.size(), -1);
    std::size_t next_var = inst.num_reasons;
    for (std::size_t k = 0; k < inst.pairs.size(); ++k)
        if (!inst.pairs[k].reasons.empty()) pair_u[k] = static_cast<int>(next_var++);
    cs.num_vars = next_var;

    for (Index e = 0; e < inst.universe_size; ++e) {
        Clause clause;
        bool free_covered = false;
        for (std::size_t k = 0; k < inst.pairs.size(); ++k) {
            const Pair& p = inst.pairs[k];
            if (std::find(p.covering.begin(), p.covering.end(), e) == p.covering.end())
                continue;
            if (p.reasons.empty()) {
                free_covered = true;  // element covered unconditionally
                break;
            }
            clause.push_back(pair_u[k] + 1);
        }
        if (!free_covered) cs.hard.push_back(std::move(clause));
    }
    for (std::size_t k = 0; k < inst.pairs.size(); ++k) {
        const Pair& p = inst.pairs[k];
        if (p.reasons.empty()) continue;
        IndexSet reasons = p.reasons;
        std::sort(reasons.begin(), reasons.end());
        for (Index q : reasons)
            cs.hard.push_back({-(pair_u[k] + 1), static_cast<int>(q) + 1});
        Clause reverse{pair_u[k] + 1};
        for (Index q : reasons) reverse.push_back(-(static_cast<int>(q) + 1));
        cs.hard.push_back(std::move(reverse));
    }
    for (Index q = 0; q < inst.num_reasons; ++q)
        cs.soft.push_back({-(static_cast<int>(q) + 1)});
    return cs;
}

namespace detail {

class MaxSatSearch {
public:
    explicit MaxSatSearch(const WeightedClauseSet& cs, Deadline deadline)
        : cs_(cs), deadline_(deadline), value_(cs.num_vars, -1) {
        for (const Clause& c : cs.hard)
            for (Literal lit : c) {
                const std::size_t v = var_of(lit);
                if (v >= cs.num_vars)
                    throw std::invalid_argument("clause references undeclared variable");
            }
        for (const Clause& c : cs.soft)
            if (c.size() != 1 || c[0] >= 0 || var_of(c[0]) >= cs.num_reasons)
                throw std::invalid_argument("soft clauses must be negative y units");
    }

    // Returns true when some model satisfies all hard clauses.
    bool run() {
        search(0);
        return found_;
    }

    std::size_t best_violations() const { return best_; }
    const std::vector<int>& best_model() const { return best_value_; }
    std::uint64_t nodes() const { return nodes_; }
    bool timed_out() const { return timed_out_; }

private:
    static std::size_t var_of(Literal lit) {
        return static_cast<std::size_t>(std::abs(lit)) - 1;
    }

    bool lit_true(Literal lit) const {
        const int v = value_[var_of(lit)];
        return v >= 0 && (lit > 0) == (v == 1);
    }
    bool lit_false(Literal lit) const {
        const int v = value_[var_of(lit)];
        return v >= 0 && (lit > 0) == (v == 0);
    }

    void assign(std::size_t v, int val) {
        value_[v] = val;
        trail_.push_back(v);
        if (val == 1 && v < cs_.num_reasons) ++violations_;
    }

    void rewind(std::size_t mark) {
        while (trail_.size() > mark) {
            const std::size_t v = trail_.back();
            trail_.pop_back();
            if (value_[v] == 1 && v < cs_.num_reasons) --violations_;
            value_[v] = -1;
        }
    }

    // Scan-based unit propagation; clause sets here are small.
    bool propagate() {
        bool changed = true;
        while (changed) {
            changed = false;
            for (const Clause& c : cs_.hard) {
                Literal unit = 0;
                bool satisfied = false;
                int unassigned = 0;
                for (Literal lit : c) {
                    if (lit_true(lit)) { satisfied = true; break; }
                    if (!lit_false(lit)) {
                        ++unassigned;
                        unit = lit;
                    }
                }
                if (satisfied) continue;
                if (unassigned == 0) return false;  // conflict
                if (unassigned == 1) {
                    assign(var_of(unit), unit > 0 ? 1 : 0);
                    changed = true;
                }
            }
        }
        return true;
    }

    void search(std::size_t depth) {
        if (timed_out_) return;
        if ((++nodes_ & 0xff) == 0 && deadline_.expired()) {
            timed_out_ = true;
            return;
        }
        const std::size_t mark = trail_.size();
        if (!propagate() || violations_ >= best_) {
            rewind(mark);
            return;
        }
        std::size_t v = cs_.num_vars;
        for (std::size_t i = 0; i < cs_.num_vars; ++i)
            if (value_[i] < 0) { v = i; break; }
        if (v == cs_.num_vars) {
            // full assignment satisfying every hard clause
            best_ = violations_;
            best_value_ = value_;
            found_ = true;
            rewind(mark);
            return;
        }
        for (int val : {0, 1}) {
            const std::size_t inner = trail_.size();
            assign(v, val);
            search(depth + 1);
            rewind(inner);
            if (timed_out_) break;
        }
        rewind(mark);
    }

    const WeightedClauseSet& cs_;
    Deadline deadline_;
    std::vector<int> value_;
    std::vector<std::size_t> trail_;
    std::size_t violations_ = 0;
    std::size_t best_ = SIZE_MAX;
    std::vector<int> best_value_;
    bool found_ = false;
    std::uint64_t nodes_ = 0;
    bool timed_out_ = false;
};

}  // namespace detail

/// Exact minimum-violation solve.  The decoded selection is the set of y
/// variables assigned true in the best model.
inline SolveResult solve_maxsat(const WeightedClauseSet& cs, const Instance& inst,
                                std::optional<std::chrono::milliseconds> time_limit = {}) {
    Stopwatch watch;
    const Deadline deadline = Deadline::after(time_limit);
    if (deadline.expired()) return SolveResult{SolveStatus::Timeout, {}, false};
    detail::MaxSatSearch search(cs, deadline);
    const bool ok = search.run();
    if (!ok && !search.timed_out()) return infeasible_result();
    IndexSet selected;
    if (ok)
        for (Index q = 0; q < cs.num_reasons; ++q)
            if (search.best_model()[q] == 1) selected.push_back(q);
    if (search.timed_out()) {
        SolveResult res{SolveStatus::Timeout, {}, false};
        if (ok) {  // incumbent found before the budget ran out
            res.solution = make_solution(inst, selected, false);
            res.solution.stats.nodes = search.nodes();
            res.solution.wall_time = watch.elapsed();
            res.has_solution = true;
        }
        return res;
    }
    Solution sol = make_solution(inst, selected, true);
    sol.stats.nodes = search.nodes();
    sol.wall_time = watch.elapsed();
    return feasible_result(std::move(sol));
}

inline SolveResult solve_maxsat(const Instance& inst,
                                std::optional<std::chrono::milliseconds> time_limit = {}) {
    return solve_maxsat(encode_maxsat(inst), inst, time_limit);
}

}  // namespace scpr
