#ifndef SEATARR_MUA_HPP
#define SEATARR_MUA_HPP

#include <algorithm>
#include <optional>
#include <set>
#include <vector>

#include "seatarr/budget.hpp"
#include "seatarr/colorcoding.hpp"
#include "seatarr/errors.hpp"
#include "seatarr/model.hpp"
#include "seatarr/mwa.hpp"
#include "seatarr/oracle.hpp"
#include "seatarr/solve.hpp"

namespace seatarr {

/// Sorted, deduplicated thresholds to probe as the optimal minimum
/// utility. Always contains 0 and every single preference value.
struct BetaCandidates {
    std::vector<Rational> values;  // ascending
};

/// Candidates for path-/cycle-graphs: a seated agent has at most two
/// neighbors, so every achievable utility is 0, a single preference value,
/// or a per-agent sum of two preference values.
inline BetaCandidates beta_candidates_path_cycle(const PreferenceProfile& profile) {
    std::set<Rational> vals;
    vals.insert(Rational(0));
    for (int p = 0; p < profile.agent_count(); ++p) {
        const auto& out = profile.out_arcs(p);
        for (size_t i = 0; i < out.size(); ++i) {
            vals.insert(out[i].second);
            for (size_t j = i + 1; j < out.size(); ++j) vals.insert(out[i].second + out[j].second);
        }
    }
    return {std::vector<Rational>(vals.begin(), vals.end())};
}

/// Candidates for stars-graphs: a leaf's utility is a single value, a
/// center's utility is a sum over its leaves, i.e. a sum of at most
/// `max_leaves` of one agent's preference values. All such subset sums are
/// enumerated; the count is polynomial for bounded out-degree.
inline BetaCandidates beta_candidates_stars(const PreferenceProfile& profile, int max_leaves,
                                            size_t candidate_cap = 2'000'000) {
    std::set<Rational> vals;
    vals.insert(Rational(0));
    for (int p = 0; p < profile.agent_count(); ++p) {
        const auto& out = profile.out_arcs(p);
        // Sums of every subset of size 1..max_leaves of p's out-values.
        std::vector<Rational> sums{Rational(0)};
        for (int depth = 0; depth < max_leaves; ++depth) {
            std::set<Rational> next;
            // Subsets are value-multisets; order does not matter, so extend
            // by each value and dedupe.
            for (const Rational& base : sums)
                for (const auto& [q, w] : out) next.insert(base + w);
            // Approximation-by-multiset would overcount duplicates of equal
            // values, which only adds candidates and never removes any.
            std::vector<Rational> grown(next.begin(), next.end());
            for (const Rational& s : grown) vals.insert(s);
            if (vals.size() > candidate_cap)
                throw ResourceLimitError("beta candidates: candidate set exceeds cap");
            sums = std::move(grown);
        }
    }
    return {std::vector<Rational>(vals.begin(), vals.end())};
}

namespace detail {

/// Trial result of a threshold solver: index of the best feasible
/// candidate plus the winning placement.
struct ThresholdTrial {
    int candidate_index = -1;
    std::vector<int> placed;
};

inline bool threshold_trial_better(const ThresholdTrial& a, const ThresholdTrial& b) {
    return a.candidate_index > b.candidate_index;
}

/// Boolean subset DP deciding whether some colorful arrangement on the
/// path (or, with `cycle_start`/`cycle_second` fixed, on the cycle) gives
/// every seated agent utility >= beta. Rows are bitmasks over the
/// penultimate agent. On success fills `chain` with the seat-ordered
/// agents.
class PathThresholdDp {
public:
    PathThresholdDp(const Instance& inst, int k) : inst_(inst), n_(inst.agent_count()), k_(k) {
        if (n_ > 64) throw ResourceLimitError("mua path/cycle solver: more than 64 agents");
        if (k_ > 30) throw ResourceLimitError("mua path/cycle solver: k too large for subset DP");
        pair_ok_.assign(n_ * n_, 0);
        single_ok_.assign(n_, 0);
        rows_.assign((1u << k_) * n_, 0);
    }

    /// Precomputes threshold masks for a fixed beta:
    /// pair_ok[p][t] = { q : s_p(q) + s_p(t) >= beta },
    /// single_ok[p]  = { q : s_p(q) >= beta }.
    void set_beta(const Rational& beta) {
        for (int p = 0; p < n_; ++p) {
            std::uint64_t single = 0;
            for (int q = 0; q < n_; ++q) {
                if (q != p && inst_.profile.get(p, q) >= beta) single |= 1ull << q;
            }
            single_ok_[p] = single;
            for (int t = 0; t < n_; ++t) {
                if (t == p) continue;
                std::uint64_t mask = 0;
                for (int q = 0; q < n_; ++q) {
                    if (q == p || q == t) continue;
                    if (inst_.profile.get(p, q) + inst_.profile.get(p, t) >= beta)
                        mask |= 1ull << q;
                }
                pair_ok_[p * n_ + t] = mask;
            }
        }
    }

    /// Path feasibility for the current beta under coloring `col`.
    bool feasible_path(const std::vector<std::uint8_t>& col, const Rational& beta,
                       std::vector<int>* chain) {
        reset();
        // Base: 2-paths q--p where the start agent q is final with s_q(p).
        for (int q = 0; q < n_; ++q)
            for (int p = 0; p < n_; ++p) {
                if (p == q || col[p] == col[q]) continue;
                if (!((single_ok_[q] >> p) & 1)) continue;
                row(mask2(col, p, q), p) |= 1ull << q;
            }
        run_transitions(col);
        const std::uint32_t full = (1u << k_) - 1;
        for (int p = 0; p < n_; ++p) {
            std::uint64_t hits = row(full, p) & single_ok_[p];
            if (!hits) continue;
            if (chain) reconstruct(col, beta, full, p, lowest_bit(hits), *chain);
            return true;
        }
        return false;
    }

    /// Cycle feasibility: iterates over the start agent and its successor.
    bool feasible_cycle(const std::vector<std::uint8_t>& col, const Rational& beta,
                        std::vector<int>* chain) {
        for (int s = 0; s < n_; ++s)
            for (int r = 0; r < n_; ++r) {
                if (r == s || col[r] == col[s]) continue;
                reset();
                row(mask2(col, r, s), r) |= 1ull << s;
                run_transitions(col);
                const std::uint32_t full = (1u << k_) - 1;
                for (int p = 0; p < n_; ++p) {
                    if (!row(full, p)) continue;
                    // Closure: start agent s ends with neighbors r and p,
                    // last agent p ends with neighbors q and s.
                    if (!(inst_.profile.get(s, r) + inst_.profile.get(s, p) >= beta)) continue;
                    std::uint64_t hits = row(full, p) & pair_ok_[p * n_ + s];
                    if (!hits) continue;
                    if (chain) reconstruct(col, beta, full, p, lowest_bit(hits), *chain);
                    return true;
                }
            }
        return false;
    }

private:
    const Instance& inst_;
    int n_, k_;
    std::vector<std::uint64_t> pair_ok_;
    std::vector<std::uint64_t> single_ok_;
    std::vector<std::uint64_t> rows_;

    std::uint64_t& row(std::uint32_t S, int p) { return rows_[static_cast<size_t>(S) * n_ + p]; }
    void reset() { std::fill(rows_.begin(), rows_.end(), 0); }
    static int lowest_bit(std::uint64_t m) { return __builtin_ctzll(m); }
    static std::uint32_t mask2(const std::vector<std::uint8_t>& col, int p, int q) {
        return (1u << col[p]) | (1u << col[q]);
    }

    void run_transitions(const std::vector<std::uint8_t>& col) {
        const std::uint32_t full = (1u << k_) - 1;
        for (std::uint32_t S = 0; S <= full; ++S) {
            for (int p = 0; p < n_; ++p) {
                if (!((S >> col[p]) & 1)) continue;
                std::uint64_t r = row(S, p);
                if (!r) continue;
                for (int t = 0; t < n_; ++t) {
                    if ((S >> col[t]) & 1) continue;
                    // Appending t finalizes p's utility s_p(q) + s_p(t).
                    if (r & pair_ok_[p * n_ + t]) row(S | (1u << col[t]), t) |= 1ull << p;
                }
            }
        }
    }

    /// Walks predecessors from state (S, last=p, penultimate=q) down to the
    /// base, producing agents in path order (start first).
    void reconstruct(const std::vector<std::uint8_t>& col, const Rational& beta, std::uint32_t S,
                     int p, int q, std::vector<int>& chain) {
        chain.clear();
        chain.push_back(p);
        while (__builtin_popcount(S) > 2) {
            std::uint32_t prev_mask = S ^ (1u << col[p]);
            std::uint64_t preds = row(prev_mask, q) & pair_ok_[q * n_ + p];
            int r = lowest_bit(preds);
            chain.push_back(q);
            S = prev_mask;
            p = q;
            q = r;
        }
        chain.push_back(q);
        std::reverse(chain.begin(), chain.end());
        (void)beta;
    }
};

}  // namespace detail

/// Polynomial special cases for non-negative preferences. Returns
/// std::nullopt when none applies.
inline std::optional<SolveOutcome> mua_polynomial_cases(const Instance& inst,
                                                        const SolverConfig& config = {}) {
    PreferenceAnalysis prefs = analyze_preferences(inst.profile);
    if (!prefs.non_negative) return std::nullopt;
    SeatGraphAnalysis seats = analyze_seats(inst.seats);
    const int n = inst.agent_count();

    SolveOutcome out;
    out.problem = Problem::MUA;
    out.algorithm = "mua-polynomial";
    out.seed = config.seed;
    if (seats.k < n) {
        // An isolated agent has utility exactly 0 and nobody can fall below
        // it, so every arrangement achieves the optimum 0.
        Arrangement id = Arrangement::identity(n);
        out.value = Rational(0);
        out.certificate = std::move(id);
        return out;
    }
    if (seats.has(SeatClass::Clique)) {
        // All seats are interchangeable within the clique.
        Arrangement id = Arrangement::identity(n);
        out.value = egalitarian(inst, id);
        out.certificate = std::move(id);
        return out;
    }
    // No isolated seats: the instance has only k agents (linear kernel).
    SolveOutcome solved = oracle_solve(Problem::MUA, inst, config);
    solved.algorithm = "mua-polynomial";
    return solved;
}

/// Maxmin utility on path-/cycle-graphs by color coding: per trial, the
/// largest feasible threshold beta is located with a binary search over the
/// candidate list (feasibility is monotone in beta by construction).
inline SolveOutcome mua_colorcoded_path_cycle(const Instance& inst, const SolverConfig& config = {}) {
    SeatGraphAnalysis seats = analyze_seats(inst.seats);
    const bool is_path = seats.has(SeatClass::Path);
    const bool is_cycle = seats.has(SeatClass::Cycle);
    if (!is_path && !is_cycle)
        throw DispatchError("mua path/cycle solver: seat graph is neither a path- nor a cycle-graph");
    const int n = inst.agent_count();
    const int k = seats.k;

    TrialPlan plan = trial_budget_log(-static_cast<double>(k), config.delta, config.trial_cap);

    BetaCandidates candidates = beta_candidates_path_cycle(inst.profile);
    std::vector<Rational> betas = candidates.values;
    if (k < n) {
        // Isolated agents pin the minimum utility at <= 0.
        betas.erase(std::upper_bound(betas.begin(), betas.end(), Rational(0)), betas.end());
    }

    std::vector<int> seat_rank(inst.seats.vertex_count(), -1);
    for (int i = 0; i < k; ++i) seat_rank[seats.nonisolated[i]] = i;
    const std::vector<int>& order = is_path ? seats.path_order : seats.cycle_order;

    detail::PathThresholdDp dp(inst, k);
    auto feasible = [&](const std::vector<std::uint8_t>& col, const Rational& beta,
                        std::vector<int>* chain) {
        dp.set_beta(beta);
        return is_path ? dp.feasible_path(col, beta, chain) : dp.feasible_cycle(col, beta, chain);
    };

    auto run_trial = [&](const std::vector<std::uint8_t>& col)
        -> std::optional<detail::ThresholdTrial> {
        // Colorings that miss a color can never fill all k seats.
        std::uint32_t seen = 0;
        for (int p = 0; p < n; ++p) seen |= 1u << col[p];
        if (seen != (1u << k) - 1) return std::nullopt;
        if (!feasible(col, betas.front(), nullptr)) return std::nullopt;
        // Largest feasible candidate: binary search on the monotone
        // feasibility predicate.
        size_t lo = 0, hi = betas.size() - 1;
        while (lo < hi) {
            size_t mid = (lo + hi + 1) / 2;
            if (feasible(col, betas[mid], nullptr)) lo = mid;
            else hi = mid - 1;
        }
        std::vector<int> chain;
        feasible(col, betas[lo], &chain);
        detail::ThresholdTrial trial;
        trial.candidate_index = static_cast<int>(lo);
        trial.placed.assign(k, -1);
        for (int i = 0; i < k; ++i) trial.placed[seat_rank[order[i]]] = chain[i];
        return trial;
    };

    TrialMemo<detail::ThresholdTrial> memo;
    auto best = memo.run(
        plan.trials,
        [&](std::uint64_t t, std::vector<std::uint8_t>& key) {
            key = sample_k_coloring(n, k, config.seed, t).color;
        },
        run_trial, detail::threshold_trial_better);
    if (!best)
        return detail::fallback_identity_outcome(Problem::MUA, inst, "mua-colorcoded-path-cycle",
                                                 config, plan.trials);
    return detail::finish_value_outcome(Problem::MUA, inst, seats, "mua-colorcoded-path-cycle",
                                        config, plan.trials, betas[best->candidate_index],
                                        best->placed);
}

/// Maxmin utility on stars-graphs. Colors are pinned to seats; per star and
/// threshold beta the center is chosen so that each leaf seat greedily
/// takes the best-valued agent among those satisfied with the center.
inline SolveOutcome mua_colorcoded_stars(const Instance& inst, const SolverConfig& config = {}) {
    SeatGraphAnalysis seats = analyze_seats(inst.seats);
    if (!seats.has(SeatClass::Stars))
        throw DispatchError("mua stars solver: seat graph is not a stars-graph");
    const int n = inst.agent_count();
    const int k = seats.k;

    TrialPlan plan =
        trial_budget_log(detail::pinned_coloring_log_success(seats), config.delta, config.trial_cap);

    int max_leaves = 0;
    for (const StarLayout& s : seats.stars)
        max_leaves = std::max(max_leaves, static_cast<int>(s.leaves.size()));
    BetaCandidates candidates = beta_candidates_stars(inst.profile, max_leaves);
    std::vector<Rational> betas = candidates.values;
    if (k < n)
        betas.erase(std::upper_bound(betas.begin(), betas.end(), Rational(0)), betas.end());

    std::vector<int> seat_rank(inst.seats.vertex_count(), -1);
    for (int i = 0; i < k; ++i) seat_rank[seats.nonisolated[i]] = i;

    // Feasibility at one beta; fills `placed` (by color) when feasible.
    auto feasible = [&](const std::vector<std::vector<int>>& by_color, const Rational& beta,
                        std::vector<int>* placed) -> bool {
        if (placed) placed->assign(k, -1);
        for (const StarLayout& star : seats.stars) {
            int center_color = seat_rank[star.center];
            bool star_ok = false;
            for (int p : by_color[center_color]) {
                Rational total;
                std::vector<int> leaves;
                bool ok = true;
                for (int leaf_seat : star.leaves) {
                    std::optional<Rational> best_value;
                    int best_agent = -1;
                    for (int q : by_color[seat_rank[leaf_seat]]) {
                        if (!(inst.profile.get(q, p) >= beta)) continue;
                        Rational v = inst.profile.get(p, q);
                        if (!best_value || v > *best_value) {
                            best_value = v;
                            best_agent = q;
                        }
                    }
                    if (!best_value) { ok = false; break; }
                    total += *best_value;
                    leaves.push_back(best_agent);
                }
                if (!ok || !(total >= beta)) continue;
                star_ok = true;
                if (placed) {
                    (*placed)[center_color] = p;
                    for (size_t i = 0; i < star.leaves.size(); ++i)
                        (*placed)[seat_rank[star.leaves[i]]] = leaves[i];
                }
                break;  // lowest-index center wins
            }
            if (!star_ok) return false;
        }
        return true;
    };

    auto run_trial = [&](const std::vector<std::uint8_t>& col)
        -> std::optional<detail::ThresholdTrial> {
        std::vector<std::vector<int>> by_color(k);
        for (int p = 0; p < n; ++p) by_color[col[p]].push_back(p);
        if (!feasible(by_color, betas.front(), nullptr)) return std::nullopt;
        size_t lo = 0, hi = betas.size() - 1;
        while (lo < hi) {
            size_t mid = (lo + hi + 1) / 2;
            if (feasible(by_color, betas[mid], nullptr)) lo = mid;
            else hi = mid - 1;
        }
        detail::ThresholdTrial trial;
        trial.candidate_index = static_cast<int>(lo);
        feasible(by_color, betas[lo], &trial.placed);
        return trial;
    };

    TrialMemo<detail::ThresholdTrial> memo;
    auto best = memo.run(
        plan.trials,
        [&](std::uint64_t t, std::vector<std::uint8_t>& key) {
            key = sample_k_coloring(n, k, config.seed, t).color;
        },
        run_trial, detail::threshold_trial_better);
    if (!best)
        return detail::fallback_identity_outcome(Problem::MUA, inst, "mua-colorcoded-stars", config,
                                                 plan.trials);
    return detail::finish_value_outcome(Problem::MUA, inst, seats, "mua-colorcoded-stars", config,
                                        plan.trials, betas[best->candidate_index], best->placed);
}

/// Result of the greedy independence kernelization shared by the maxmin
/// and exchange-stability solvers.
struct KernelResult {
    /// Certificate placing k pairwise-indifferent agents on the non-isolated
    /// seats; its egalitarian welfare is exactly 0. Present iff the greedy
    /// found k independent agents.
    std::optional<Arrangement> certificate;
    std::vector<int> independent_agents;  // ascending, when certificate present
    /// Otherwise the instance itself is small: at most k(1+2*delta_plus)
    /// agents. `agent_map` maps reduced indices to original ones (identity;
    /// kept for symmetry with the interface of other reductions).
    std::optional<Instance> reduced;
    std::vector<int> agent_map;
};

/// Greedy loop: repeatedly take an agent of minimum in-degree in the
/// preference graph (ties to the lowest index) and delete its in- and
/// out-neighbors. Requires at least one isolated seat.
inline KernelResult kernelize_independent(const Instance& inst) {
    SeatGraphAnalysis seats = analyze_seats(inst.seats);
    const int n = inst.agent_count();
    const int k = seats.k;
    if (k >= n) throw DispatchError("kernelization requires at least one isolated seat");

    std::vector<char> alive(n, 1);
    std::vector<int> chosen;
    while (static_cast<int>(chosen.size()) < k) {
        int best = -1, best_indeg = 0;
        for (int p = 0; p < n; ++p) {
            if (!alive[p]) continue;
            int indeg = 0;
            for (int q : inst.profile.in_neighbors(p))
                if (alive[q]) ++indeg;
            if (best == -1 || indeg < best_indeg) {
                best = p;
                best_indeg = indeg;
            }
        }
        if (best == -1) break;  // graph exhausted before k picks
        chosen.push_back(best);
        alive[best] = 0;
        for (int q : inst.profile.in_neighbors(best)) alive[q] = 0;
        for (const auto& [q, w] : inst.profile.out_arcs(best)) alive[q] = 0;
    }

    KernelResult result;
    if (static_cast<int>(chosen.size()) == k) {
        std::sort(chosen.begin(), chosen.end());
        result.independent_agents = chosen;
        result.certificate = detail::complete_arrangement(inst, seats.nonisolated, chosen);
        return result;
    }
    result.reduced = inst;
    result.agent_map.resize(n);
    for (int i = 0; i < n; ++i) result.agent_map[i] = i;
    return result;
}

/// Maxmin utility via kernelization for the combined parameter k + delta+:
/// either k independent agents give the analytically optimal value 0, or
/// the whole instance is small enough for the oracle.
inline SolveOutcome mua_kernelize_kdelta(const Instance& inst, const SolverConfig& config = {}) {
    KernelResult kernel = kernelize_independent(inst);
    if (kernel.certificate) {
        SolveOutcome out;
        out.problem = Problem::MUA;
        out.value = egalitarian(inst, *kernel.certificate);
        if (*out.value != Rational(0))
            throw std::logic_error("kernel bug: independent certificate not at 0");
        out.certificate = kernel.certificate;
        out.algorithm = "mua-kernel-kdelta";
        out.seed = config.seed;
        return out;
    }
    SolveOutcome out = oracle_solve(Problem::MUA, *kernel.reduced, config);
    out.algorithm = "mua-kernel-kdelta";
    return out;
}

/// Dispatcher for maxmin utility.
inline SolveOutcome mua_solve(const Instance& inst, const SolverConfig& config = {}) {
    switch (config.algorithm) {
        case Algorithm::Oracle: return oracle_solve(Problem::MUA, inst, config);
        case Algorithm::MuaPolynomial: {
            auto out = mua_polynomial_cases(inst, config);
            if (!out) throw DispatchError("mua polynomial cases: preferences have negative values");
            return *out;
        }
        case Algorithm::MuaPathCycle: return mua_colorcoded_path_cycle(inst, config);
        case Algorithm::MuaStars: return mua_colorcoded_stars(inst, config);
        case Algorithm::MuaKernel: return mua_kernelize_kdelta(inst, config);
        case Algorithm::Auto: break;
        default: throw DispatchError("algorithm does not solve MUA");
    }
    SeatGraphAnalysis seats = analyze_seats(inst.seats);
    if (seats.k == 0 || detail::oracle_is_tiny(inst, seats))
        return oracle_solve(Problem::MUA, inst, config);
    if (auto out = mua_polynomial_cases(inst, config)) return *out;
    try {
        if (seats.has(SeatClass::Stars)) return mua_colorcoded_stars(inst, config);
        if (seats.has(SeatClass::Path) || seats.has(SeatClass::Cycle))
            return mua_colorcoded_path_cycle(inst, config);
        if (seats.k < inst.agent_count()) return mua_kernelize_kdelta(inst, config);
    } catch (const ResourceLimitError&) {
        // fall through to the oracle guard
    }
    try {
        return oracle_solve(Problem::MUA, inst, config);
    } catch (const ResourceLimitError&) {
        throw ResourceLimitError("mua: unsupported at this scale");
    }
}

}  // namespace seatarr

#endif
