#ifndef SEATARR_MWA_HPP
#define SEATARR_MWA_HPP

#include <algorithm>
#include <optional>
#include <vector>

#include "seatarr/budget.hpp"
#include "seatarr/colorcoding.hpp"
#include "seatarr/errors.hpp"
#include "seatarr/model.hpp"
#include "seatarr/oracle.hpp"
#include "seatarr/solve.hpp"

namespace seatarr {
namespace detail {

/// One successful trial of a welfare-maximizing solver: the achieved value
/// plus the agents placed on the non-isolated seats (indexed by seat rank).
struct WelfareTrial {
    Rational value;
    std::vector<int> placed;
};

inline bool welfare_trial_better(const WelfareTrial& a, const WelfareTrial& b) {
    return a.value > b.value;
}

/// C(n,k)*k! small enough that the oracle is the obvious choice.
inline bool oracle_is_tiny(const Instance& inst, const SeatGraphAnalysis& seats,
                           unsigned long long threshold = 20'000) {
    long double total = 1.0L;
    for (int i = 0; i < seats.k; ++i) {
        total *= static_cast<long double>(inst.agent_count() - i);
        if (total > static_cast<long double>(threshold)) return false;
    }
    return true;
}

/// Answer of last resort when no trial produced a placement (probability
/// at most delta): any arrangement is a sound lower bound.
inline SolveOutcome fallback_identity_outcome(Problem problem, const Instance& inst,
                                              const char* algorithm, const SolverConfig& config,
                                              std::uint64_t trials) {
    Arrangement id = Arrangement::identity(inst.agent_count());
    SolveOutcome out;
    out.problem = problem;
    out.value = problem == Problem::MWA ? welfare(inst, id) : egalitarian(inst, id);
    out.certificate = std::move(id);
    out.algorithm = algorithm;
    out.trials_run = trials;
    out.seed = config.seed;
    return out;
}

inline SolveOutcome finish_value_outcome(Problem problem, const Instance& inst,
                                         const SeatGraphAnalysis& seats, const char* algorithm,
                                         const SolverConfig& config, std::uint64_t trials,
                                         const Rational& value, const std::vector<int>& placed) {
    Arrangement arr = complete_arrangement(inst, seats.nonisolated, placed);
    Rational check = problem == Problem::MWA ? welfare(inst, arr) : egalitarian(inst, arr);
    if (check != value) throw std::logic_error("solver bug: certificate does not reproduce value");
    SolveOutcome out;
    out.problem = problem;
    out.value = value;
    out.certificate = std::move(arr);
    out.algorithm = algorithm;
    out.trials_run = trials;
    out.seed = config.seed;
    return out;
}

}  // namespace detail

/// Color-coding welfare maximization on a path- or cycle-graph. Each trial
/// samples a uniform k-coloring and runs a subset DP over color sets; a
/// trial can only find genuine arrangements, so errors are one-sided. The
/// per-trial success bound exp(-k) (probability that the k solution agents
/// get pairwise distinct colors) sizes the trial budget.
inline SolveOutcome mwa_colorcoded_path_cycle(const Instance& inst, const SolverConfig& config = {}) {
    SeatGraphAnalysis seats = analyze_seats(inst.seats);
    const bool is_path = seats.has(SeatClass::Path);
    const bool is_cycle = seats.has(SeatClass::Cycle);
    if (!is_path && !is_cycle)
        throw DispatchError("mwa path/cycle solver: seat graph is neither a path- nor a cycle-graph");
    const int n = inst.agent_count();
    const int k = seats.k;
    if (k > 30) throw ResourceLimitError("mwa path/cycle solver: k too large for subset DP");

    TrialPlan plan = trial_budget_log(-static_cast<double>(k), config.delta, config.trial_cap);
    const std::uint32_t full = (k >= 1 ? (1u << k) : 1u) - 1u;
    const std::vector<int>& order = is_path ? seats.path_order : seats.cycle_order;

    std::vector<int> seat_rank(inst.seats.vertex_count(), -1);
    for (int i = 0; i < k; ++i) seat_rank[seats.nonisolated[i]] = i;

    // T[S][p]: best welfare of a colorful partial path with color set S
    // ending at agent p, plus the predecessor for reconstruction.
    struct Cell {
        std::optional<Rational> value;
        int parent = -1;
    };

    auto run_path_dp = [&](const Coloring& col, int forced_start)
        -> std::optional<std::pair<Rational, std::vector<int>>> {
        std::vector<std::vector<Cell>> table(full + 1, std::vector<Cell>(n));
        for (int p = 0; p < n; ++p) {
            if (forced_start >= 0 && p != forced_start) continue;
            table[1u << col.color[p]][p].value = Rational(0);
        }
        for (std::uint32_t S = 1; S <= full; ++S) {
            if (__builtin_popcount(S) < 2) continue;
            for (int p = 0; p < n; ++p) {
                std::uint32_t cp = 1u << col.color[p];
                if (!(S & cp)) continue;
                Cell& cell = table[S][p];
                const auto& prev = table[S ^ cp];
                for (int q = 0; q < n; ++q) {
                    if (!prev[q].value || !((S ^ cp) & (1u << col.color[q]))) continue;
                    Rational v = *prev[q].value + inst.profile.get(p, q) + inst.profile.get(q, p);
                    if (!cell.value || v > *cell.value) {
                        cell.value = v;
                        cell.parent = q;
                    }
                }
            }
        }
        std::optional<Rational> best;
        int best_last = -1;
        for (int p = 0; p < n; ++p) {
            const Cell& c = table[full][p];
            if (!c.value) continue;
            Rational v = *c.value;
            if (is_cycle) {
                if (p == forced_start) continue;
                v += inst.profile.get(forced_start, p) + inst.profile.get(p, forced_start);
            }
            if (!best || v > *best) {
                best = v;
                best_last = p;
            }
        }
        if (!best) return std::nullopt;
        std::vector<int> chain;  // last agent back to first
        std::uint32_t S = full;
        int p = best_last;
        while (p != -1) {
            chain.push_back(p);
            int parent = table[S][p].parent;
            S ^= 1u << col.color[p];
            p = parent;
        }
        std::reverse(chain.begin(), chain.end());
        return std::pair(*best, std::move(chain));
    };

    auto run_trial = [&](const std::vector<std::uint8_t>& key)
        -> std::optional<detail::WelfareTrial> {
        Coloring col{k, key};
        std::optional<std::pair<Rational, std::vector<int>>> best;
        if (is_path) {
            best = run_path_dp(col, -1);
        } else {
            for (int start = 0; start < n; ++start) {
                auto r = run_path_dp(col, start);
                if (r && (!best || r->first > best->first)) best = r;
            }
        }
        if (!best) return std::nullopt;
        detail::WelfareTrial trial;
        trial.value = best->first;
        trial.placed.assign(k, -1);
        for (int i = 0; i < k; ++i) trial.placed[seat_rank[order[i]]] = best->second[i];
        return trial;
    };

    TrialMemo<detail::WelfareTrial> memo;
    auto best = memo.run(
        plan.trials,
        [&](std::uint64_t t, std::vector<std::uint8_t>& key) {
            key = sample_k_coloring(n, k, config.seed, t).color;
        },
        run_trial, detail::welfare_trial_better);
    if (!best)
        return detail::fallback_identity_outcome(Problem::MWA, inst, "mwa-colorcoded-path-cycle",
                                                 config, plan.trials);
    return detail::finish_value_outcome(Problem::MWA, inst, seats, "mwa-colorcoded-path-cycle",
                                        config, plan.trials, best->value, best->placed);
}

/// Color-coding welfare maximization on a stars-graph. Colors are pinned
/// one-to-one to the non-isolated seats; per star the best center agent is
/// chosen together with the greedy best leaf agent per leaf seat. The trial
/// budget uses the pinned-coloring success bound |Aut|/k^k.
inline SolveOutcome mwa_colorcoded_stars(const Instance& inst, const SolverConfig& config = {}) {
    SeatGraphAnalysis seats = analyze_seats(inst.seats);
    if (!seats.has(SeatClass::Stars))
        throw DispatchError("mwa stars solver: seat graph is not a stars-graph");
    const int n = inst.agent_count();
    const int k = seats.k;

    TrialPlan plan =
        trial_budget_log(detail::pinned_coloring_log_success(seats), config.delta, config.trial_cap);

    std::vector<int> seat_rank(inst.seats.vertex_count(), -1);
    for (int i = 0; i < k; ++i) seat_rank[seats.nonisolated[i]] = i;

    // Agents of each color, in ascending index order.
    auto run_trial = [&](const std::vector<std::uint8_t>& key)
        -> std::optional<detail::WelfareTrial> {
        std::vector<std::vector<int>> by_color(k);
        for (int p = 0; p < n; ++p) by_color[key[p]].push_back(p);

        detail::WelfareTrial trial;
        trial.value = Rational(0);
        trial.placed.assign(k, -1);
        for (const StarLayout& star : seats.stars) {
            int center_color = seat_rank[star.center];
            std::optional<Rational> star_best;
            int best_center = -1;
            std::vector<int> best_leaves;
            for (int p : by_color[center_color]) {
                Rational total;
                std::vector<int> leaves;
                bool ok = true;
                for (int leaf_seat : star.leaves) {
                    int leaf_color = seat_rank[leaf_seat];
                    std::optional<Rational> leaf_best;
                    int leaf_agent = -1;
                    for (int q : by_color[leaf_color]) {
                        Rational v = inst.profile.get(p, q) + inst.profile.get(q, p);
                        if (!leaf_best || v > *leaf_best) {
                            leaf_best = v;
                            leaf_agent = q;
                        }
                    }
                    if (!leaf_best) { ok = false; break; }
                    total += *leaf_best;
                    leaves.push_back(leaf_agent);
                }
                if (!ok) continue;
                if (!star_best || total > *star_best) {
                    star_best = total;
                    best_center = p;
                    best_leaves = std::move(leaves);
                }
            }
            if (!star_best) return std::nullopt;  // coloring failure, not input failure
            trial.value += *star_best;
            trial.placed[center_color] = best_center;
            for (size_t i = 0; i < star.leaves.size(); ++i)
                trial.placed[seat_rank[star.leaves[i]]] = best_leaves[i];
        }
        return trial;
    };

    TrialMemo<detail::WelfareTrial> memo;
    auto best = memo.run(
        plan.trials,
        [&](std::uint64_t t, std::vector<std::uint8_t>& key) {
            key = sample_k_coloring(n, k, config.seed, t).color;
        },
        run_trial, detail::welfare_trial_better);
    if (!best)
        return detail::fallback_identity_outcome(Problem::MWA, inst, "mwa-colorcoded-stars", config,
                                                 plan.trials);
    return detail::finish_value_outcome(Problem::MWA, inst, seats, "mwa-colorcoded-stars", config,
                                        plan.trials, best->value, best->placed);
}

/// Welfare maximization for symmetric preferences on arbitrary seat graphs
/// via random separation: a 2-coloring isolates the solution agents from
/// their preference neighbors, a pinned k-coloring fixes their seats, and a
/// subset DP picks preference-graph components whose colors tile the seats.
inline SolveOutcome mwa_symmetric_kdelta(const Instance& inst, const SolverConfig& config = {}) {
    PreferenceAnalysis prefs = analyze_preferences(inst.profile);
    if (!prefs.symmetric)
        throw DispatchError("mwa symmetric solver: preferences are not symmetric");
    SeatGraphAnalysis seats = analyze_seats(inst.seats);
    const int n = inst.agent_count();
    const int k = seats.k;
    if (k > 30) throw ResourceLimitError("mwa symmetric solver: k too large for subset DP");

    double ln_p = detail::separation_log_success(k, prefs.delta_plus) +
                  detail::pinned_coloring_log_success(seats);
    TrialPlan plan = trial_budget_log(ln_p, config.delta, config.trial_cap);

    std::vector<int> seat_rank(inst.seats.vertex_count(), -1);
    for (int i = 0; i < k; ++i) seat_rank[seats.nonisolated[i]] = i;
    // Adjacency between seat colors.
    std::vector<std::uint64_t> color_adj(k, 0);
    for (int i = 0; i < k; ++i)
        for (int v : inst.seats.neighbors(seats.nonisolated[i]))
            if (seat_rank[v] >= 0) color_adj[i] |= 1ull << seat_rank[v];

    const std::uint32_t full = (k >= 1 ? (1u << k) : 1u) - 1u;

    auto run_trial = [&](const std::vector<std::uint8_t>& key)
        -> std::optional<detail::WelfareTrial> {
        const std::uint8_t* sep = key.data();
        const std::uint8_t* col = key.data() + n;

        // Connected components of the preference graph induced by red agents.
        std::vector<int> comp(n, -1);
        std::vector<std::vector<int>> comps;
        for (int p = 0; p < n; ++p) {
            if (sep[p] != 0 || comp[p] != -1) continue;
            int id = static_cast<int>(comps.size());
            comps.emplace_back();
            std::vector<int> stack{p};
            comp[p] = id;
            while (!stack.empty()) {
                int u = stack.back();
                stack.pop_back();
                comps[id].push_back(u);
                for (const auto& [q, w] : inst.profile.out_arcs(u))
                    if (sep[q] == 0 && comp[q] == -1) {
                        comp[q] = id;
                        stack.push_back(q);
                    }
            }
        }

        // Keep components whose colors are pairwise distinct; compute each
        // one's welfare contribution under the seat-pinned placement.
        struct Candidate {
            std::uint32_t mask;
            Rational contribution;
            const std::vector<int>* agents;
        };
        std::vector<Candidate> candidates;
        for (const auto& c : comps) {
            if (static_cast<int>(c.size()) > k) continue;
            std::uint32_t mask = 0;
            bool distinct = true;
            for (int p : c) {
                std::uint32_t bit = 1u << col[p];
                if (mask & bit) { distinct = false; break; }
                mask |= bit;
            }
            if (!distinct) continue;
            Rational contribution;
            for (int p : c)
                for (const auto& [q, w] : inst.profile.out_arcs(p))
                    if (sep[q] == 0 && comp[q] == comp[p] && (color_adj[col[p]] >> col[q]) & 1)
                        contribution += w;
            candidates.push_back({mask, contribution, &c});
        }

        // Subset DP: pick components whose colors exactly tile [k].
        struct Cell {
            std::optional<Rational> value;
            int taken = -1;              // candidate index, -1 = none
            std::uint32_t prev = 0;
        };
        std::vector<Cell> table(full + 1);
        table[0].value = Rational(0);
        for (size_t i = 0; i < candidates.size(); ++i) {
            const Candidate& cand = candidates[i];
            // Walk masks descending so each candidate is used at most once.
            for (std::uint32_t S = full; ; --S) {
                if ((S & cand.mask) == cand.mask) {
                    const Cell& from = table[S ^ cand.mask];
                    if (from.value) {
                        Rational v = *from.value + cand.contribution;
                        Cell& to = table[S];
                        if (!to.value || v > *to.value) {
                            to.value = v;
                            to.taken = static_cast<int>(i);
                            to.prev = S ^ cand.mask;
                        }
                    }
                }
                if (S == 0) break;
            }
        }
        if (!table[full].value) return std::nullopt;

        detail::WelfareTrial trial;
        trial.value = *table[full].value;
        trial.placed.assign(k, -1);
        std::uint32_t S = full;
        while (S != 0) {
            const Cell& cell = table[S];
            if (cell.taken < 0) return std::nullopt;  // unreachable by construction
            for (int p : *candidates[cell.taken].agents) trial.placed[col[p]] = p;
            S = cell.prev;
        }
        return trial;
    };

    TrialMemo<detail::WelfareTrial> memo;
    auto best = memo.run(
        plan.trials,
        [&](std::uint64_t t, std::vector<std::uint8_t>& key) {
            Coloring sep = sample_separation(n, config.seed, 2 * t);
            Coloring col = sample_k_coloring(n, k, config.seed, 2 * t + 1);
            key = std::move(sep.color);
            key.insert(key.end(), col.color.begin(), col.color.end());
        },
        run_trial, detail::welfare_trial_better);
    if (!best)
        return detail::fallback_identity_outcome(Problem::MWA, inst, "mwa-symmetric-kdelta", config,
                                                 plan.trials);
    return detail::finish_value_outcome(Problem::MWA, inst, seats, "mwa-symmetric-kdelta", config,
                                        plan.trials, best->value, best->placed);
}

/// Dispatcher: oracle for tiny instances, else the cheapest applicable
/// specialized solver, else the oracle under its resource guard.
inline SolveOutcome mwa_solve(const Instance& inst, const SolverConfig& config = {}) {
    switch (config.algorithm) {
        case Algorithm::Oracle: return oracle_solve(Problem::MWA, inst, config);
        case Algorithm::MwaPathCycle: return mwa_colorcoded_path_cycle(inst, config);
        case Algorithm::MwaStars: return mwa_colorcoded_stars(inst, config);
        case Algorithm::MwaSymmetric: return mwa_symmetric_kdelta(inst, config);
        case Algorithm::Auto: break;
        default: throw DispatchError("algorithm does not solve MWA");
    }
    SeatGraphAnalysis seats = analyze_seats(inst.seats);
    if (seats.k == 0 || detail::oracle_is_tiny(inst, seats))
        return oracle_solve(Problem::MWA, inst, config);
    PreferenceAnalysis prefs = analyze_preferences(inst.profile);
    try {
        if (seats.has(SeatClass::Stars)) return mwa_colorcoded_stars(inst, config);
        if (seats.has(SeatClass::Path) || seats.has(SeatClass::Cycle))
            return mwa_colorcoded_path_cycle(inst, config);
        if (prefs.symmetric) return mwa_symmetric_kdelta(inst, config);
    } catch (const ResourceLimitError&) {
        // fall through to the oracle guard
    }
    try {
        return oracle_solve(Problem::MWA, inst, config);
    } catch (const ResourceLimitError&) {
        throw ResourceLimitError("mwa: unsupported at this scale");
    }
}

}  // namespace seatarr

#endif
