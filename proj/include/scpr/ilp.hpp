#pragma once

// Binary linear program for SCPR.  Reason selection is y_i in {0,1}; each
// pair k with reason set {i_1..i_t} gets an auxiliary u_k linearising the
// monomial y_{i_1}...y_{i_t}:
//
//   u_k <= y_{i_j}                       for each j        (link)
//   y_{i_1} + ... + y_{i_t} - u_k <= t-1                   (cardinality)
//   sum of u_k over pairs covering each element >= 1       (coverage)
//   minimise sum y_i
//
// Pairs with an empty reason set contribute a constant 1 to their elements'
// coverage constraints instead of a variable.  The solver is an exact 0-1
// branch and bound over the y variables (u values are propagated, since the
// link plus cardinality rows pin u_k to the conjunction of its factors);
// the model can also be dumped in LP text format for external cross-checks.

#include <sstream>
#include <stdexcept>

#include "scpr/core.hpp"
#include "scpr/cover_state.hpp"
#include "scpr/deadline.hpp"

namespace scpr {

enum class RowKind { Link, Cardinality, Coverage };

struct IlpTerm {
    int var;    // y_i -> i, u for pair k -> num_reasons + u ordinal
    int coeff;
};

struct IlpRow {
    RowKind kind;
    std::vector<IlpTerm> terms;
    int constant = 0;  // constant contribution on the left-hand side
    bool less_eq = true;
    int rhs = 0;
};

struct IlpModel {
    Index num_reasons = 0;
    std::vector<std::size_t> u_pair;          // u ordinal -> pair index
    std::vector<int> pair_u;                  // pair index -> u var id, -1 if none
    std::vector<IlpRow> rows;

    std::size_t num_vars() const { return num_reasons + u_pair.size(); }

    std::string var_name(int v) const {
        if (v < static_cast<int>(num_reasons)) return "y" + std::to_string(v);
        return "u" + std::to_string(u_pair[static_cast<std::size_t>(v) - num_reasons]);
    }
};

inline IlpModel build_ilp(const Instance& inst) {
    IlpModel model;
    model.num_reasons = inst.num_reasons;
    model.pair_u.assign(inst.pairs.size(), -1);
    for (std::size_t k = 0; k < inst.pairs.size(); ++k) {
        if (inst.pairs[k].reasons.empty()) continue;
        model.pair_u[k] = static_cast<int>(inst.num_reasons + model.u_pair.size());
        model.u_pair.push_back(k);
    }

    for (std::size_t k = 0; k < inst.pairs.size(); ++k) {
        const Pair& p = inst.pairs[k];
        if (p.reasons.empty()) continue;
        const int u = model.pair_u[k];
        IndexSet reasons = p.reasons;
        std::sort(reasons.begin(), reasons.end());
        for (Index q : reasons)
            model.rows.push_back(
                {RowKind::Link, {{u, 1}, {static_cast<int>(q), -1}}, 0, true, 0});
        IlpRow card{RowKind::Cardinality, {}, 0, true, static_cast<int>(reasons.size()) - 1};
        for (Index q : reasons) card.terms.push_back({static_cast<int>(q), 1});
        card.terms.push_back({u, -1});
        model.rows.push_back(std::move(card));
    }

    for (Index e = 0; e < inst.universe_size; ++e) {
        IlpRow cover{RowKind::Coverage, {}, 0, false, 1};
        for (std::size_t k = 0; k < inst.pairs.size(); ++k) {
            const Pair& p = inst.pairs[k];
            if (std::find(p.covering.begin(), p.covering.end(), e) == p.covering.end())
                continue;
            if (p.reasons.empty())
                cover.constant += 1;  // free pair, always active
            else
                cover.terms.push_back({model.pair_u[k], 1});
        }
        model.rows.push_back(std::move(cover));
    }
    return model;
}

/// LP interchange text (objective, rows, binary markers).
inline std::string write_lp(const IlpModel& model) {
    std::ostringstream out;
    out << "Minimize\n obj:";
    for (Index q = 0; q < model.num_reasons; ++q)
        out << (q ? " + " : " ") << "y" << q;
    out << "\nSubject To\n";
    std::size_t link = 0, card = 0, cover = 0;
    for (const IlpRow& row : model.rows) {
        std::string label;
        switch (row.kind) {
            case RowKind::Link: label = "link" + std::to_string(link++); break;
            case RowKind::Cardinality: label = "card" + std::to_string(card++); break;
            case RowKind::Coverage: label = "cover" + std::to_string(cover++); break;
        }
        out << " " << label << ":";
        bool first = true;
        for (const IlpTerm& t : row.terms) {
            const int c = t.coeff;
            if (first) {
                if (c == 1) out << " ";
                else if (c == -1) out << " -";
                else out << " " << c << " ";
            } else {
                out << (c < 0 ? " - " : " + ");
                if (c != 1 && c != -1) out << std::abs(c) << " ";
            }
            out << model.var_name(t.var);
            first = false;
        }
        if (row.terms.empty()) out << " 0 " << model.var_name(0);  // degenerate row
        out << (row.less_eq ? " <= " : " >= ") << row.rhs - row.constant << "\n";
    }
    out << "Binaries\n";
    for (std::size_t v = 0; v < model.num_vars(); ++v) out << " " << model.var_name(static_cast<int>(v));
    out << "\nEnd\n";
    return out.str();
}

namespace detail {

/// Rebuilds the pair/element structure encoded in the model rows; throws on
/// rows that do not fit the covering-model shape.
inline Instance decode_ilp(const IlpModel& model) {
    const int y_count = static_cast<int>(model.num_reasons);
    const int total = static_cast<int>(model.num_vars());
    std::vector<IndexSet> u_reasons(model.u_pair.size());
    std::vector<std::vector<int>> coverage_rows;
    std::vector<int> coverage_constants;

    for (const IlpRow& row : model.rows) {
        for (const IlpTerm& t : row.terms)
            if (t.var < 0 || t.var >= total)
                throw std::invalid_argument("ilp model references undeclared variable");
        switch (row.kind) {
            case RowKind::Link: {
                if (row.terms.size() != 2 || !row.less_eq || row.rhs != 0)
                    throw std::invalid_argument("malformed link row");
                const IlpTerm& a = row.terms[0];
                const IlpTerm& b = row.terms[1];
                if (a.coeff != 1 || b.coeff != -1 || a.var < y_count || b.var >= y_count)
                    throw std::invalid_argument("malformed link row");
                u_reasons[a.var - y_count].push_back(static_cast<Index>(b.var));
                break;
            }
            case RowKind::Cardinality:
                if (!row.less_eq) throw std::invalid_argument("malformed cardinality row");
                break;
            case RowKind::Coverage: {
                if (row.less_eq || row.rhs != 1)
                    throw std::invalid_argument("malformed coverage row");
                std::vector<int> us;
                for (const IlpTerm& t : row.terms) {
                    if (t.coeff != 1 || t.var < y_count)
                        throw std::invalid_argument("coverage row must sum u variables");
                    us.push_back(t.var - y_count);
                }
                coverage_rows.push_back(std::move(us));
                coverage_constants.push_back(row.constant);
                break;
            }
        }
    }

    Instance decoded;
    decoded.universe_size = static_cast<Index>(coverage_rows.size());
    decoded.num_reasons = model.num_reasons;
    decoded.pairs.resize(model.u_pair.size());
    for (std::size_t u = 0; u < model.u_pair.size(); ++u) {
        if (u_reasons[u].empty())
            throw std::invalid_argument("auxiliary variable without link rows");
        std::sort(u_reasons[u].begin(), u_reasons[u].end());
        decoded.pairs[u].reasons = std::move(u_reasons[u]);
    }
    for (Index e = 0; e < decoded.universe_size; ++e) {
        for (int u : coverage_rows[e])
            decoded.pairs[static_cast<std::size_t>(u)].covering.push_back(e);
        if (coverage_constants[e] > 0)
            decoded.pairs.push_back(Pair{{e}, {}});  // constant term: free pair
    }
    return decoded;
}

struct BranchBound {
    CoverState state;
    Deadline deadline;
    std::uint64_t nodes = 0;
    bool timed_out = false;
    std::size_t best;
    IndexSet best_selection;
    bool found = false;

    explicit BranchBound(const Instance& inst, Deadline dl)
        : state(inst), deadline(dl), best(inst.num_reasons + 1) {}

    // Branch variable: the free reason occurring in the most live candidate
    // pairs of uncovered elements.
    std::optional<Index> pick_reason() {
        const Instance& inst = state.instance();
        std::vector<std::uint32_t> score(inst.num_reasons, 0);
        for (Index e = 0; e < inst.universe_size; ++e) {
            if (state.element_covered(e)) continue;
            for (std::size_t k : state.pairs_of_element(e)) {
                if (!state.pair_live(k)) continue;
                for (Index q : inst.pairs[k].reasons)
                    if (!state.is_selected(q)) ++score[q];
            }
        }
        std::optional<Index> pick;
        std::uint32_t best_score = 0;
        for (Index q = 0; q < inst.num_reasons; ++q) {
            if (state.is_selected(q) || state.is_banned(q)) continue;
            if (score[q] > best_score) {
                best_score = score[q];
                pick = q;
            }
        }
        return best_score ? pick : std::nullopt;
    }

    void dfs() {
        if (timed_out) return;
        if ((++nodes & 0xff) == 0 && deadline.expired()) {
            timed_out = true;
            return;
        }
        if (state.covered()) {
            if (state.selection_size() < best) {
                best = state.selection_size();
                best_selection = state.selection();
                found = true;
            }
            return;
        }
        if (state.stranded()) return;
        if (state.selection_size() + state.deficit_bound() >= best) return;
        auto pick = pick_reason();
        if (!pick) return;  // uncovered elements but no useful reason left
        state.select(*pick);
        dfs();
        state.deselect(*pick);
        state.ban(*pick);
        dfs();
        state.unban(*pick);
    }
};

}  // namespace detail

/// Exact 0-1 solve of a covering model.  Returns a provably optimal
/// selection, an infeasibility verdict, or Timeout (with the incumbent, not
/// marked optimal, when one was found).
inline SolveResult solve_ilp(const IlpModel& model,
                             std::optional<std::chrono::milliseconds> time_limit = {}) {
    Stopwatch watch;
    const Instance decoded = detail::decode_ilp(model);
    detail::BranchBound bb(decoded, Deadline::after(time_limit));
    if (bb.deadline.expired()) return SolveResult{SolveStatus::Timeout, {}, false};
    bb.dfs();
    if (bb.timed_out) {
        SolveResult res{SolveStatus::Timeout, {}, false};
        if (bb.found) {
            res.solution = make_solution(decoded, bb.best_selection, false);
            res.solution.stats.nodes = bb.nodes;
            res.solution.wall_time = watch.elapsed();
            res.has_solution = true;
        }
        return res;
    }
    if (!bb.found) return infeasible_result();
    Solution sol = make_solution(decoded, bb.best_selection, true);
    sol.stats.nodes = bb.nodes;
    sol.wall_time = watch.elapsed();
    return feasible_result(std::move(sol));
}

/// Convenience: build and solve in one go.
inline SolveResult solve_ilp(const Instance& inst,
                             std::optional<std::chrono::milliseconds> time_limit = {}) {
    return solve_ilp(build_ilp(inst), time_limit);
}

}  // namespace scpr
