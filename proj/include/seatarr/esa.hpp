#ifndef SEATARR_ESA_HPP
#define SEATARR_ESA_HPP

#include <algorithm>
#include <optional>
#include <set>
#include <vector>

#include "seatarr/errors.hpp"
#include "seatarr/model.hpp"
#include "seatarr/mua.hpp"
#include "seatarr/oracle.hpp"
#include "seatarr/solve.hpp"

namespace seatarr {

/// Exchange-stable arrangement for clique-graphs with non-negative
/// preferences: seats inside the clique are interchangeable and nobody
/// seated envies an isolated seat, so no mutual envy can form. Any
/// arrangement works; the identity is returned and checked.
inline SolveOutcome esa_clique_nonneg(const Instance& inst, const SolverConfig& config = {}) {
    SeatGraphAnalysis seats = analyze_seats(inst.seats);
    PreferenceAnalysis prefs = analyze_preferences(inst.profile);
    if (seats.k > 0 && !seats.has(SeatClass::Clique))
        throw DispatchError("esa clique solver: seat graph is not a clique-graph");
    if (!prefs.non_negative)
        throw DispatchError("esa clique solver: preferences have negative values");
    Arrangement id = Arrangement::identity(inst.agent_count());
    if (!check_exchange_stable(inst, id).ok)
        throw std::logic_error("solver bug: clique identity arrangement not exchange-stable");
    SolveOutcome out;
    out.problem = Problem::ESA;
    out.exists = true;
    out.certificate = std::move(id);
    out.algorithm = "esa-clique-nonneg";
    out.seed = config.seed;
    return out;
}

/// Exchange stability via the greedy independence kernel: k mutually
/// indifferent agents on the seats are always stable; otherwise the whole
/// instance is small and the oracle decides.
inline SolveOutcome esa_kernelize_kdelta(const Instance& inst, const SolverConfig& config = {}) {
    KernelResult kernel = kernelize_independent(inst);
    if (kernel.certificate) {
        if (!check_exchange_stable(inst, *kernel.certificate).ok)
            throw std::logic_error("kernel bug: independent certificate not exchange-stable");
        SolveOutcome out;
        out.problem = Problem::ESA;
        out.exists = true;
        out.certificate = kernel.certificate;
        out.algorithm = "esa-kernel-kdelta";
        out.seed = config.seed;
        return out;
    }
    SolveOutcome out = oracle_solve(Problem::ESA, *kernel.reduced, config);
    out.algorithm = "esa-kernel-kdelta";
    return out;
}

/// One executed blocking swap.
struct SwapStep {
    int p = 0;
    int q = 0;
    Rational welfare_before;
    Rational welfare_after;
};

/// Trace of a swap-dynamics run. Under symmetric preferences the welfare
/// strictly increases at every step.
struct SwapTrace {
    std::vector<SwapStep> steps;
    std::uint64_t step_cap = 0;
};

struct SwapDynamicsResult {
    SolveOutcome outcome;
    SwapTrace trace;
};

/// Default step cap: generous at desk scale; hitting it signals a bug, not
/// an instance property.
inline std::uint64_t default_swap_step_cap(const Instance& inst) {
    std::set<Rational> magnitudes;
    for (const Arc& a : inst.profile.arcs())
        magnitudes.insert(a.weight.is_negative() ? -a.weight : a.weight);
    std::uint64_t n = static_cast<std::uint64_t>(inst.agent_count());
    return n * n * n * (magnitudes.size() + 1);
}

/// Local search for symmetric preferences: repeatedly executes the
/// lexicographically smallest exchange-blocking pair. Each swap strictly
/// raises the welfare (both swappers strictly gain and their mutual term
/// is unchanged), so the dynamics terminate in an exchange-stable
/// arrangement from any start.
inline SwapDynamicsResult esa_swap_dynamics_symmetric(
    const Instance& inst, const std::optional<Arrangement>& start = std::nullopt,
    std::optional<std::uint64_t> step_cap = std::nullopt, const SolverConfig& config = {}) {
    PreferenceAnalysis prefs = analyze_preferences(inst.profile);
    if (!prefs.symmetric)
        throw DispatchError("esa swap dynamics: preferences are not symmetric");
    const int n = inst.agent_count();
    Arrangement current = start ? *start : Arrangement::identity(n);
    if (current.size() != n) throw std::invalid_argument("esa swap dynamics: start size mismatch");

    SwapDynamicsResult result;
    result.trace.step_cap = step_cap ? *step_cap : default_swap_step_cap(inst);

    while (true) {
        Verdict v = check_exchange_stable(inst, current);
        if (v.ok) break;
        if (result.trace.steps.size() >= result.trace.step_cap)
            throw std::logic_error(
                "esa swap dynamics: step cap exceeded (welfare potential violated)");
        auto [p, q] = *v.witness;
        SwapStep step;
        step.p = p;
        step.q = q;
        step.welfare_before = welfare(inst, current);
        current = swap_agents(current, p, q);
        step.welfare_after = welfare(inst, current);
        if (!(step.welfare_after > step.welfare_before))
            throw std::logic_error("esa swap dynamics: welfare did not strictly increase");
        result.trace.steps.push_back(std::move(step));
    }

    result.outcome.problem = Problem::ESA;
    result.outcome.exists = true;
    result.outcome.certificate = std::move(current);
    result.outcome.algorithm = "esa-swap-dynamics";
    result.outcome.seed = config.seed;
    return result;
}

/// Dispatcher for exchange-stable arrangement.
inline SolveOutcome esa_solve(const Instance& inst, const SolverConfig& config = {}) {
    switch (config.algorithm) {
        case Algorithm::Oracle: return oracle_solve(Problem::ESA, inst, config);
        case Algorithm::EsaClique: return esa_clique_nonneg(inst, config);
        case Algorithm::EsaKernel: return esa_kernelize_kdelta(inst, config);
        case Algorithm::EsaSwap:
            return esa_swap_dynamics_symmetric(inst, std::nullopt, std::nullopt, config).outcome;
        case Algorithm::Auto: break;
        default: throw DispatchError("algorithm does not solve ESA");
    }
    SeatGraphAnalysis seats = analyze_seats(inst.seats);
    if (seats.k == 0 || detail::oracle_is_tiny(inst, seats))
        return oracle_solve(Problem::ESA, inst, config);
    PreferenceAnalysis prefs = analyze_preferences(inst.profile);
    if (seats.has(SeatClass::Clique) && prefs.non_negative) return esa_clique_nonneg(inst, config);
    if (prefs.symmetric)
        return esa_swap_dynamics_symmetric(inst, std::nullopt, std::nullopt, config).outcome;
    if (seats.k < inst.agent_count()) return esa_kernelize_kdelta(inst, config);
    try {
        return oracle_solve(Problem::ESA, inst, config);
    } catch (const ResourceLimitError&) {
        throw ResourceLimitError("esa: unsupported at this scale");
    }
}

}  // namespace seatarr

#endif
