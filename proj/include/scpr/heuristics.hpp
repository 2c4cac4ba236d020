#pragma once

// Metaheuristic SCPR solvers over the shared penalised fitness.  Every
// routine is deterministic for a given (instance, params, seed), never
// returns a silently infeasible selection, and never claims optimality.
// Budget fields set to a negative value resolve to instance-scaled
// defaults at run time.

#include <cmath>
#include <optional>

#include "scpr/core.hpp"
#include "scpr/cover_state.hpp"
#include "scpr/deadline.hpp"
#include "scpr/fitness.hpp"
#include "scpr/rng.hpp"

namespace scpr {

struct SaParams {
    double initial_temperature = -1;  // <=0: number of reasons
    double cooling = 0.95;            // applied once per sweep of r flips
    std::int64_t max_flips = -1;      // <0: 200 * r
};

struct GaParams {
    std::size_t population = 50;
    std::size_t generations = 100;
    double crossover_rate = 0.9;
    double mutation_rate = -1;  // <0: 1/r
    std::vector<Bitstring> initial_population;  // optional override
};

struct PsoParams {
    std::size_t swarm = 30;
    std::size_t iterations = 100;
    double inertia = 0.7;
    double accel_personal = 1.5;
    double accel_global = 1.5;
    double threshold = 0.5;
    std::vector<std::vector<double>> initial_positions;  // optional override
};

struct MlsesParams {
    std::size_t restart_threshold = 50;  // stalled flips before a restart
    std::size_t neighbourhood = 0;       // candidate flips scored per step, 0 = all
    std::int64_t max_steps = -1;         // <0: 200 * r
    std::optional<Bitstring> initial;    // start configuration override
};

struct HeuristicParams {
    SaParams sa;
    GaParams ga;
    PsoParams pso;
    MlsesParams mlses;
    std::uint64_t seed = 0;
};

namespace detail {

/// Keeps the first-seen best feasible bitstring (max phi = min cardinality).
class BestTracker {
public:
    BestTracker(const Instance& inst, const FitnessEvaluator& eval)
        : inst_(&inst), eval_(&eval) {}

    void offer(const Bitstring& bits) {
        if (!eval_->feasible(bits)) return;
        const std::int64_t phi = (*eval_)(bits);
        if (!found_ || phi > best_phi_) {
            best_phi_ = phi;
            best_ = bits;
            found_ = true;
        }
    }

    bool found() const { return found_; }

    SolveResult result(std::uint64_t iterations, std::uint64_t restarts,
                       const Stopwatch& watch) const {
        if (!found_) return infeasible_result();
        Solution sol = make_solution(*inst_, to_selection(best_), false);
        sol.stats.iterations = iterations;
        sol.stats.restarts = restarts;
        sol.wall_time = watch.elapsed();
        return feasible_result(std::move(sol));
    }

private:
    const Instance* inst_;
    const FitnessEvaluator* eval_;
    Bitstring best_;
    std::int64_t best_phi_ = 0;
    bool found_ = false;
};

inline SolveResult timed_out(const BestTracker& best, std::uint64_t iterations,
                             std::uint64_t restarts, const Stopwatch& watch) {
    SolveResult res = best.result(iterations, restarts, watch);
    res.status = SolveStatus::Timeout;
    return res;
}

inline Bitstring random_bits(Rng& rng, Index r) {
    Bitstring bits(r, 0);
    for (Index q = 0; q < r; ++q) bits[q] = rng.chance(0.5) ? 1 : 0;
    return bits;
}

}  // namespace detail

/// Largest-new-coverage greedy with a ratio fallback for rounds where no
/// single reason activates anything (pairs needing reason combinations).
inline SolveResult greedy(const Instance& inst, Deadline deadline = {}) {
    Stopwatch watch;
    CoverState state(inst);
    std::uint64_t rounds = 0;
    while (!state.covered()) {
        ++rounds;
        if (deadline.expired()) return SolveResult{SolveStatus::Timeout, {}, false};
        Index best_gain = 0;
        Index best_reason = inst.num_reasons;
        for (Index q = 0; q < inst.num_reasons; ++q) {
            if (state.is_selected(q)) continue;
            const Index g = state.gain(q);
            if (g > best_gain) {
                best_gain = g;
                best_reason = q;
            }
        }
        if (best_gain > 0) {
            state.select(best_reason);
            continue;
        }
        // stall: pick the pair with the cheapest missing-reasons per newly
        // covered element, and chip away at its reason set
        std::size_t best_pair = inst.pairs.size();
        std::uint64_t bm = 0, bn = 1;  // ratio bm/bn
        for (std::size_t k = 0; k < inst.pairs.size(); ++k) {
            if (state.missing(k) == 0) continue;
            Index fresh = 0;
            for (Index e : inst.pairs[k].covering)
                if (!state.element_covered(e)) ++fresh;
            if (fresh == 0) continue;
            const std::uint64_t m = state.missing(k);
            if (best_pair == inst.pairs.size() || m * bn < bm * fresh) {
                best_pair = k;
                bm = m;
                bn = fresh;
            }
        }
        if (best_pair == inst.pairs.size()) return infeasible_result();
        for (Index q : inst.pairs[best_pair].reasons) {
            if (!state.is_selected(q)) {
                state.select(q);
                break;
            }
        }
    }
    Solution sol = make_solution(inst, state.selection(), false);
    sol.stats.iterations = rounds;
    sol.wall_time = watch.elapsed();
    return feasible_result(std::move(sol));
}

/// Single-bit-flip annealing over phi with geometric cooling.
inline SolveResult simulated_annealing(const Instance& inst, const SaParams& params,
                                       std::uint64_t seed, Deadline deadline = {}) {
    Stopwatch watch;
    const Index r = inst.num_reasons;
    FitnessEvaluator eval(inst);
    detail::BestTracker best(inst, eval);
    Rng rng(derive_seed(seed, "sa"));

    Bitstring bits = detail::random_bits(rng, r);
    best.offer(bits);
    if (r == 0) return best.result(0, 0, watch);

    const std::int64_t budget = params.max_flips >= 0 ? params.max_flips : 200ll * r;
    double temperature =
        params.initial_temperature > 0 ? params.initial_temperature : static_cast<double>(r);
    std::int64_t phi = eval(bits);
    for (std::int64_t step = 0; step < budget; ++step) {
        if ((step & 0xff) == 0 && deadline.expired())
            return detail::timed_out(best, static_cast<std::uint64_t>(step), 0, watch);
        const Index q = static_cast<Index>(rng.below(r));
        bits[q] ^= 1;
        const std::int64_t candidate = eval(bits);
        const std::int64_t delta = candidate - phi;
        if (delta >= 0 || rng.unit() < std::exp(static_cast<double>(delta) / temperature)) {
            phi = candidate;
            best.offer(bits);
        } else {
            bits[q] ^= 1;  // reject
        }
        if ((step + 1) % r == 0) temperature *= params.cooling;
    }
    return best.result(static_cast<std::uint64_t>(budget), 0, watch);
}

/// Fitness-proportional selection, single-point crossover, per-gene
/// mutation.  The default initial population contains the full selection so
/// a feasible candidate exists from generation zero.
inline SolveResult genetic(const Instance& inst, const GaParams& params, std::uint64_t seed,
                           Deadline deadline = {}) {
    Stopwatch watch;
    const Index r = inst.num_reasons;
    FitnessEvaluator eval(inst);
    detail::BestTracker best(inst, eval);
    Rng rng(derive_seed(seed, "ga"));

    std::vector<Bitstring> population = params.initial_population;
    if (population.empty()) {
        population.push_back(Bitstring(r, 1));
        while (population.size() < std::max<std::size_t>(params.population, 1))
            population.push_back(detail::random_bits(rng, r));
    }
    const std::size_t pop_size = population.size();
    const double mutation =
        params.mutation_rate >= 0 ? params.mutation_rate : (r > 0 ? 1.0 / r : 0.0);

    std::vector<std::int64_t> phi(pop_size);
    auto evaluate = [&] {
        for (std::size_t i = 0; i < pop_size; ++i) {
            phi[i] = eval(population[i]);
            best.offer(population[i]);
        }
    };
    auto roulette = [&]() -> std::size_t {
        std::int64_t total = 0;
        for (std::int64_t f : phi) total += f;
        if (total <= 0) return rng.below(pop_size);
        std::int64_t ticket = static_cast<std::int64_t>(rng.below(static_cast<std::uint64_t>(total)));
        for (std::size_t i = 0; i < pop_size; ++i) {
            ticket -= phi[i];
            if (ticket < 0) return i;
        }
        return pop_size - 1;
    };

    evaluate();
    for (std::size_t gen = 0; gen < params.generations; ++gen) {
        if (deadline.expired()) return detail::timed_out(best, gen, 0, watch);
        std::vector<Bitstring> next;
        next.reserve(pop_size);
        while (next.size() < pop_size) {
            Bitstring a = population[roulette()];
            Bitstring b = population[roulette()];
            if (r >= 2 && rng.chance(params.crossover_rate)) {
                const std::size_t cut = 1 + rng.below(r - 1);
                for (std::size_t g = cut; g < r; ++g) std::swap(a[g], b[g]);
            }
            for (Index g = 0; g < r; ++g) {
                if (mutation > 0 && rng.chance(mutation)) a[g] ^= 1;
                if (mutation > 0 && rng.chance(mutation)) b[g] ^= 1;
            }
            next.push_back(std::move(a));
            if (next.size() < pop_size) next.push_back(std::move(b));
        }
        population = std::move(next);
        evaluate();
    }
    return best.result(params.generations, 0, watch);
}

/// Binary PSO: continuous positions in [0,1]^r, thresholded for evaluation.
inline SolveResult pso(const Instance& inst, const PsoParams& params, std::uint64_t seed,
                       Deadline deadline = {}) {
    Stopwatch watch;
    const Index r = inst.num_reasons;
    FitnessEvaluator eval(inst);
    detail::BestTracker best(inst, eval);
    Rng rng(derive_seed(seed, "pso"));

    std::vector<std::vector<double>> pos = params.initial_positions;
    if (pos.empty()) {
        pos.emplace_back(r, 1.0);  // full selection: feasible anchor
        while (pos.size() < std::max<std::size_t>(params.swarm, 1)) {
            std::vector<double> p(r);
            for (Index g = 0; g < r; ++g) p[g] = rng.unit();
            pos.push_back(std::move(p));
        }
    }
    const std::size_t swarm = pos.size();
    std::vector<std::vector<double>> vel(swarm, std::vector<double>(r, 0.0));
    std::vector<std::vector<double>> pbest = pos;
    std::vector<std::int64_t> pbest_phi(swarm);
    std::size_t gbest = 0;

    auto threshold_bits = [&](const std::vector<double>& p) {
        Bitstring bits(r, 0);
        for (Index g = 0; g < r; ++g) bits[g] = p[g] >= params.threshold ? 1 : 0;
        return bits;
    };

    for (std::size_t i = 0; i < swarm; ++i) {
        const Bitstring bits = threshold_bits(pos[i]);
        pbest_phi[i] = eval(bits);
        best.offer(bits);
        if (pbest_phi[i] > pbest_phi[gbest]) gbest = i;
    }

    for (std::size_t iter = 0; iter < params.iterations; ++iter) {
        if (deadline.expired()) return detail::timed_out(best, iter, 0, watch);
        for (std::size_t i = 0; i < swarm; ++i) {
            for (Index g = 0; g < r; ++g) {
                const double v = params.inertia * vel[i][g] +
                                 params.accel_personal * rng.unit() * (pbest[i][g] - pos[i][g]) +
                                 params.accel_global * rng.unit() * (pbest[gbest][g] - pos[i][g]);
                vel[i][g] = std::clamp(v, -1.0, 1.0);
                pos[i][g] = std::clamp(pos[i][g] + vel[i][g], 0.0, 1.0);
            }
            const Bitstring bits = threshold_bits(pos[i]);
            const std::int64_t phi = eval(bits);
            best.offer(bits);
            if (phi > pbest_phi[i]) {
                pbest_phi[i] = phi;
                pbest[i] = pos[i];
                if (phi > pbest_phi[gbest]) gbest = i;
            }
        }
    }
    return best.result(params.iterations, 0, watch);
}

/// Score-guided local search with configuration checking: a bit may be
/// re-flipped only after its neighbourhood (bits sharing a pair) changed.
/// Starts from the full selection and descends; restarts randomly after a
/// run of stalled flips.
inline SolveResult mlses_cc(const Instance& inst, const MlsesParams& params, std::uint64_t seed,
                            Deadline deadline = {}) {
    Stopwatch watch;
    const Index r = inst.num_reasons;
    FitnessEvaluator eval(inst);
    detail::BestTracker best(inst, eval);
    Rng rng(derive_seed(seed, "mlses"));

    // reason adjacency via shared pairs
    std::vector<std::vector<Index>> neighbours(r);
    for (const Pair& p : inst.pairs)
        for (Index a : p.reasons)
            for (Index b : p.reasons)
                if (a != b) neighbours[a].push_back(b);
    for (auto& ns : neighbours) {
        std::sort(ns.begin(), ns.end());
        ns.erase(std::unique(ns.begin(), ns.end()), ns.end());
    }

    Bitstring bits = params.initial ? *params.initial : Bitstring(r, 1);
    std::vector<char> conf(r, 1);
    best.offer(bits);
    if (r == 0) return best.result(0, 0, watch);

    const std::int64_t budget = params.max_steps >= 0 ? params.max_steps : 200ll * r;
    Index covered = eval.covered_count(bits);
    std::size_t stalls = 0;
    std::uint64_t restarts = 0;

    auto apply_flip = [&](Index q) {
        bits[q] ^= 1;
        covered = eval.covered_count(bits);
        conf[q] = 0;
        for (Index nb : neighbours[q]) conf[nb] = 1;
        best.offer(bits);
    };

    for (std::int64_t step = 0; step < budget; ++step) {
        if ((step & 0xff) == 0 && deadline.expired())
            return detail::timed_out(best, static_cast<std::uint64_t>(step), restarts, watch);
        Index best_q = r;
        std::int64_t best_score = 0;
        bool best_drops = false;
        std::vector<Index> allowed;
        for (Index q = 0; q < r; ++q) {
            if (!conf[q]) continue;
            if (params.neighbourhood && allowed.size() >= params.neighbourhood) break;
            allowed.push_back(q);
            bits[q] ^= 1;
            const std::int64_t score =
                static_cast<std::int64_t>(eval.covered_count(bits)) - covered;
            bits[q] ^= 1;
            const bool drops = bits[q] == 1;
            if (best_q == r || score > best_score || (score == best_score && drops && !best_drops)) {
                best_q = q;
                best_score = score;
                best_drops = drops;
            }
        }
        if (best_q != r && (best_score > 0 || (best_score == 0 && best_drops))) {
            apply_flip(best_q);
            stalls = 0;
            continue;
        }
        ++stalls;
        if (allowed.empty() || stalls >= params.restart_threshold) {
            bits = detail::random_bits(rng, r);
            std::fill(conf.begin(), conf.end(), 1);
            covered = eval.covered_count(bits);
            best.offer(bits);
            stalls = 0;
            ++restarts;
        } else {
            apply_flip(allowed[rng.below(allowed.size())]);
        }
    }
    return best.result(static_cast<std::uint64_t>(budget), restarts, watch);
}

}  // namespace scpr
