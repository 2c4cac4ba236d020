#pragma once

// Name-addressable solver dispatch used by the CLI and the bench pipeline.

#include <stdexcept>
#include <string>

#include "scpr/brute_force.hpp"
#include "scpr/cardinality_search.hpp"
#include "scpr/core.hpp"
#include "scpr/heuristics.hpp"
#include "scpr/ilp.hpp"
#include "scpr/maxsat.hpp"

namespace scpr {

enum class SolverKind { Brute, Ilp, Deepening, Maxsat, Greedy, Sa, Ga, Pso, Mlses };

inline const std::vector<SolverKind>& all_solvers() {
    static const std::vector<SolverKind> kinds = {
        SolverKind::Brute, SolverKind::Ilp,    SolverKind::Deepening,
        SolverKind::Maxsat, SolverKind::Greedy, SolverKind::Sa,
        SolverKind::Ga,     SolverKind::Pso,    SolverKind::Mlses};
    return kinds;
}

inline std::string to_string(SolverKind kind) {
    switch (kind) {
        case SolverKind::Brute: return "brute";
        case SolverKind::Ilp: return "ilp";
        case SolverKind::Deepening: return "deepening";
        case SolverKind::Maxsat: return "maxsat";
        case SolverKind::Greedy: return "greedy";
        case SolverKind::Sa: return "sa";
        case SolverKind::Ga: return "ga";
        case SolverKind::Pso: return "pso";
        case SolverKind::Mlses: return "mlses";
    }
    return "?";
}

inline SolverKind solver_from_string(const std::string& name) {
    for (SolverKind kind : all_solvers())
        if (to_string(kind) == name) return kind;
    throw std::invalid_argument("unknown solver '" + name + "'");
}

inline bool is_exact(SolverKind kind) {
    switch (kind) {
        case SolverKind::Brute:
        case SolverKind::Ilp:
        case SolverKind::Deepening:
        case SolverKind::Maxsat:
            return true;
        default:
            return false;
    }
}

/// Runs one solver.  `seed` feeds the randomised heuristics; exact solvers
/// ignore it.  The brute-force safety bound is lifted here because callers
/// choose it as an oracle deliberately.
inline SolveResult run_solver(SolverKind kind, const Instance& inst,
                              const HeuristicParams& params, std::uint64_t seed,
                              std::optional<std::chrono::milliseconds> time_limit = {}) {
    const Deadline deadline = Deadline::after(time_limit);
    switch (kind) {
        case SolverKind::Brute: {
            BruteForceOptions opts;
            opts.force = true;
            opts.deadline = deadline;
            return brute_force(inst, opts);
        }
        case SolverKind::Ilp: return solve_ilp(inst, time_limit);
        case SolverKind::Deepening: return iterative_deepening(inst, time_limit);
        case SolverKind::Maxsat: return solve_maxsat(inst, time_limit);
        case SolverKind::Greedy: return greedy(inst, deadline);
        case SolverKind::Sa: return simulated_annealing(inst, params.sa, seed, deadline);
        case SolverKind::Ga: return genetic(inst, params.ga, seed, deadline);
        case SolverKind::Pso: return pso(inst, params.pso, seed, deadline);
        case SolverKind::Mlses: return mlses_cc(inst, params.mlses, seed, deadline);
    }
    throw std::logic_error("unhandled solver kind");
}

}  // namespace scpr
