#ifndef SEATARR_EFA_HPP
#define SEATARR_EFA_HPP

#include <algorithm>
#include <functional>
#include <optional>
#include <vector>

#include "seatarr/budget.hpp"
#include "seatarr/colorcoding.hpp"
#include "seatarr/errors.hpp"
#include "seatarr/model.hpp"
#include "seatarr/mwa.hpp"
#include "seatarr/oracle.hpp"
#include "seatarr/solve.hpp"

namespace seatarr {
namespace detail {

struct ExistenceTrial {
    std::vector<int> placed;  // agent at nonisolated seat rank
};

inline SolveOutcome existence_outcome(Problem problem, const Instance& inst,
                                      const SeatGraphAnalysis& seats, const char* algorithm,
                                      const SolverConfig& config, std::uint64_t trials, bool exists,
                                      const std::vector<int>* placed) {
    SolveOutcome out;
    out.problem = problem;
    out.exists = exists;
    out.algorithm = algorithm;
    out.trials_run = trials;
    out.seed = config.seed;
    if (exists && placed) {
        Arrangement arr = complete_arrangement(inst, seats.nonisolated, *placed);
        Verdict v = problem == Problem::EFA ? check_envy_free(inst, arr)
                                            : check_exchange_stable(inst, arr);
        if (!v.ok) throw std::logic_error("solver bug: certificate fails its own checker");
        out.certificate = std::move(arr);
    }
    return out;
}

/// Connected components of the preference graph viewed as undirected,
/// optionally restricted to positive arcs, over the agents selected by
/// `member`. Components are listed in order of their smallest agent and
/// sorted internally.
inline std::vector<std::vector<int>> preference_components(const PreferenceProfile& profile,
                                                           bool positive_only,
                                                           const std::vector<char>& member) {
    const int n = profile.agent_count();
    std::vector<std::vector<int>> adj(n);
    for (const Arc& a : profile.arcs()) {
        if (positive_only && !a.weight.is_positive()) continue;
        if (!member[a.from] || !member[a.to]) continue;
        adj[a.from].push_back(a.to);
        adj[a.to].push_back(a.from);
    }
    std::vector<std::vector<int>> comps;
    std::vector<char> seen(n, 0);
    for (int p = 0; p < n; ++p) {
        if (!member[p] || seen[p]) continue;
        comps.emplace_back();
        std::vector<int> stack{p};
        seen[p] = 1;
        while (!stack.empty()) {
            int u = stack.back();
            stack.pop_back();
            comps.back().push_back(u);
            for (int q : adj[u])
                if (!seen[q]) {
                    seen[q] = 1;
                    stack.push_back(q);
                }
        }
        std::sort(comps.back().begin(), comps.back().end());
    }
    return comps;
}

}  // namespace detail

/// Envy-free arrangement for clique-graphs with non-negative symmetric
/// preferences. Every preference component must sit entirely inside or
/// entirely outside the clique, so the question reduces to a subset-sum of
/// component sizes hitting exactly k.
inline SolveOutcome efa_clique_nonneg_symmetric(const Instance& inst,
                                                const SolverConfig& config = {}) {
    SeatGraphAnalysis seats = analyze_seats(inst.seats);
    PreferenceAnalysis prefs = analyze_preferences(inst.profile);
    if (seats.k > 0 && !seats.has(SeatClass::Clique))
        throw DispatchError("efa clique solver: seat graph is not a clique-graph");
    if (!prefs.non_negative || !prefs.symmetric)
        throw DispatchError("efa clique solver: preferences must be non-negative and symmetric");
    const int n = inst.agent_count();
    const int k = seats.k;

    std::vector<char> all(n, 1);
    std::vector<std::vector<int>> comps = detail::preference_components(inst.profile, false, all);

    // T[i][k'] = can the first i components reach total size k'. Stored as
    // one back-pointer per reachable sum.
    const int m = static_cast<int>(comps.size());
    std::vector<std::vector<signed char>> take(m + 1, std::vector<signed char>(k + 1, -1));
    std::vector<char> reachable(k + 1, 0);
    reachable[0] = 1;
    std::vector<std::vector<char>> reach_at(m + 1);
    reach_at[0] = reachable;
    for (int i = 1; i <= m; ++i) {
        int size = static_cast<int>(comps[i - 1].size());
        std::vector<char> next = reach_at[i - 1];
        for (int kk = k; kk >= size; --kk)
            if (!next[kk] && reach_at[i - 1][kk - size]) {
                next[kk] = 1;
                take[i][kk] = 1;
            }
        reach_at[i] = std::move(next);
    }

    if (!reach_at[m][k])
        return detail::existence_outcome(Problem::EFA, inst, seats, "efa-clique-nonneg-symmetric",
                                         config, 0, false, nullptr);

    // Reconstruct a selection and place its agents on the clique seats in
    // ascending index order.
    std::vector<int> selected_agents;
    int kk = k;
    for (int i = m; i >= 1; --i) {
        if (take[i][kk] == 1) {
            for (int p : comps[i - 1]) selected_agents.push_back(p);
            kk -= static_cast<int>(comps[i - 1].size());
        }
    }
    std::sort(selected_agents.begin(), selected_agents.end());
    return detail::existence_outcome(Problem::EFA, inst, seats, "efa-clique-nonneg-symmetric",
                                     config, 0, true, &selected_agents);
}

namespace detail {

/// Shared per-trial machinery of the separation-based EFA solvers: red
/// components under a 2-coloring, pinned seat colors, and the color-set
/// tiling DP. `component_ok` decides whether a candidate component may sit
/// on the seats its colors dictate.
struct SeparationTrialContext {
    const Instance& inst;
    const SeatGraphAnalysis& seats;
    std::vector<int> seat_rank;               // seat id -> color
    std::vector<std::uint64_t> color_adj;     // seat adjacency between colors

    explicit SeparationTrialContext(const Instance& instance, const SeatGraphAnalysis& analysis)
        : inst(instance), seats(analysis) {
        seat_rank.assign(inst.seats.vertex_count(), -1);
        for (int i = 0; i < seats.k; ++i) seat_rank[seats.nonisolated[i]] = i;
        color_adj.assign(seats.k, 0);
        for (int i = 0; i < seats.k; ++i)
            for (int v : inst.seats.neighbors(seats.nonisolated[i]))
                color_adj[i] |= 1ull << seat_rank[v];
    }
};

/// Boolean subset DP selecting components whose color sets tile [k].
/// Returns the selected component indices, or nullopt.
inline std::optional<std::vector<int>> tile_colors(
    const std::vector<std::uint32_t>& masks, int k) {
    const std::uint32_t full = (k >= 1 ? (1u << k) : 1u) - 1u;
    std::vector<int> taken(full + 1, -2);  // -2 unreachable, -1 base, else component
    std::vector<std::uint32_t> prev(full + 1, 0);
    taken[0] = -1;
    for (size_t i = 0; i < masks.size(); ++i) {
        for (std::uint32_t S = full;; --S) {
            if ((S & masks[i]) == masks[i]) {
                std::uint32_t rest = S ^ masks[i];
                if (taken[S] == -2 && taken[rest] != -2) {
                    taken[S] = static_cast<int>(i);
                    prev[S] = rest;
                }
            }
            if (S == 0) break;
        }
    }
    if (taken[full] == -2) return std::nullopt;
    std::vector<int> chosen;
    std::uint32_t S = full;
    while (S != 0) {
        chosen.push_back(taken[S]);
        S = prev[S];
    }
    return chosen;
}

}  // namespace detail

/// Envy-free arrangement for non-negative preferences on arbitrary seat
/// graphs: random separation splits candidate agents from their
/// preference neighbors, a pinned k-coloring fixes seats, and components
/// are kept only if their internal placement is envy-free against every
/// possible swap target among the k seats.
inline SolveOutcome efa_nonneg_kdelta(const Instance& inst, const SolverConfig& config = {}) {
    PreferenceAnalysis prefs = analyze_preferences(inst.profile);
    if (!prefs.non_negative)
        throw DispatchError("efa non-negative solver: preferences have negative values");
    SeatGraphAnalysis seats = analyze_seats(inst.seats);
    const int n = inst.agent_count();
    const int k = seats.k;
    if (k > 30) throw ResourceLimitError("efa non-negative solver: k too large for subset DP");

    double ln_p = detail::separation_log_success(k, prefs.delta_plus) +
                  detail::pinned_coloring_log_success(seats);
    TrialPlan plan = trial_budget_log(ln_p, config.delta, config.trial_cap);

    detail::SeparationTrialContext ctx(inst, seats);

    auto run_trial = [&](const std::vector<std::uint8_t>& key)
        -> std::optional<detail::ExistenceTrial> {
        const std::uint8_t* sep = key.data();
        const std::uint8_t* col = key.data() + n;

        std::vector<char> red(n, 0);
        for (int p = 0; p < n; ++p) red[p] = sep[p] == 0;
        // With non-negative preferences every arc is positive, so these are
        // the components of the full preference graph on red agents.
        std::vector<std::vector<int>> comps =
            detail::preference_components(inst.profile, false, red);

        std::vector<std::uint32_t> masks;
        std::vector<const std::vector<int>*> kept;
        for (const auto& comp : comps) {
            if (static_cast<int>(comp.size()) > k) continue;
            std::uint32_t mask = 0;
            bool distinct = true;
            for (int p : comp) {
                std::uint32_t bit = 1u << col[p];
                if (mask & bit) { distinct = false; break; }
                mask |= bit;
            }
            if (!distinct) continue;

            // Occupant of each color within this component.
            std::vector<int> agent_of_color(k, -1);
            for (int p : comp) agent_of_color[col[p]] = p;
            // Utilities and swap payoffs are component-local: all
            // preferences toward other components are zero.
            auto payoff = [&](int p, int at_color, int vacated_color) {
                Rational sum;
                std::uint64_t neigh = ctx.color_adj[at_color];
                while (neigh) {
                    int j = __builtin_ctzll(neigh);
                    neigh &= neigh - 1;
                    if (j == vacated_color) {
                        // The swap partner took p's old seat.
                        if (agent_of_color[at_color] != -1 && agent_of_color[at_color] != p)
                            sum += inst.profile.get(p, agent_of_color[at_color]);
                        continue;
                    }
                    int q = agent_of_color[j];
                    if (q != -1 && q != p) sum += inst.profile.get(p, q);
                }
                return sum;
            };
            bool envy_free = true;
            for (int p : comp) {
                Rational here = payoff(p, col[p], -1);
                for (int j = 0; j < k && envy_free; ++j) {
                    if (j == col[p]) continue;
                    if (payoff(p, j, col[p]) > here) envy_free = false;
                }
                if (!envy_free) break;
            }
            if (!envy_free) continue;
            masks.push_back(mask);
            kept.push_back(&comp);
        }

        auto chosen = detail::tile_colors(masks, k);
        if (!chosen) return std::nullopt;
        detail::ExistenceTrial trial;
        trial.placed.assign(k, -1);
        for (int idx : *chosen)
            for (int p : *kept[idx]) trial.placed[col[p]] = p;
        // Belt and braces: the locality argument is only valid under a
        // successful coloring, so re-validate against the full instance.
        Arrangement arr = detail::complete_arrangement(inst, seats.nonisolated, trial.placed);
        if (!check_envy_free(inst, arr).ok) return std::nullopt;
        return trial;
    };

    std::uint64_t executed = 0;
    std::optional<detail::ExistenceTrial> found;
    {
        TrialMemo<detail::ExistenceTrial> memo;
        for (std::uint64_t t = 0; t < plan.trials; ++t) {
            std::vector<std::uint8_t> key;
            Coloring sepc = sample_separation(n, config.seed, 2 * t);
            Coloring colc = sample_k_coloring(n, std::max(k, 1), config.seed, 2 * t + 1);
            key = std::move(sepc.color);
            key.insert(key.end(), colc.color.begin(), colc.color.end());
            auto r = memo.run(
                1, [&](std::uint64_t, std::vector<std::uint8_t>& kk) { kk = key; }, run_trial,
                [](const detail::ExistenceTrial&, const detail::ExistenceTrial&) { return false; });
            ++executed;
            if (r) { found = r; break; }
        }
    }
    return detail::existence_outcome(Problem::EFA, inst, seats, "efa-nonneg-kdelta", config,
                                     executed, found.has_value(), found ? &found->placed : nullptr);
}

namespace detail {

/// Generates all partitions of {0..k-1} as restricted-growth strings in
/// lexicographic order, invoking `fn(block_of)` for each.
inline void for_each_partition(int k, const std::function<void(const std::vector<int>&)>& fn) {
    std::vector<int> block_of(k, 0);
    std::function<void(int, int)> rec = [&](int i, int max_used) {
        if (i == k) {
            fn(block_of);
            return;
        }
        for (int b = 0; b <= max_used + 1 && b < k; ++b) {
            block_of[i] = b;
            rec(i + 1, std::max(max_used, b));
        }
    };
    if (k == 0) {
        fn(block_of);
        return;
    }
    rec(0, -1);
}

}  // namespace detail

/// Envy-free arrangement on matching-graphs for arbitrary preferences via
/// random separation over the positive preference graph, seat-partition
/// guessing, and multicolored-independent-set branching over surviving
/// components.
inline SolveOutcome efa_matching_kdelta(const Instance& inst, const SolverConfig& config = {}) {
    SeatGraphAnalysis seats = analyze_seats(inst.seats);
    if (seats.k > 0 && !seats.has(SeatClass::Matching))
        throw DispatchError("efa matching solver: seat graph is not a matching-graph");
    const int n = inst.agent_count();
    const int k = seats.k;
    if (k > 30) throw ResourceLimitError("efa matching solver: k too large");
    if (k > config.partition_cap)
        throw ResourceLimitError("efa matching solver: k exceeds the partition enumeration cap");

    if (k == n) {
        // No isolated seats means the whole instance has only k agents: a
        // linear kernel; answer exactly by enumeration.
        SolveOutcome out = oracle_solve(Problem::EFA, inst, config);
        out.algorithm = "efa-matching-kdelta";
        return out;
    }

    PreferenceAnalysis prefs = analyze_preferences(inst.profile);
    double ln_p = detail::separation_log_success(k, prefs.delta_plus) +
                  detail::pinned_coloring_log_success(seats);
    TrialPlan plan = trial_budget_log(ln_p, config.delta, config.trial_cap);

    detail::SeparationTrialContext ctx(inst, seats);
    // Partner color of each color along the matching edges.
    std::vector<int> partner(k, -1);
    for (auto [u, v] : seats.matching) {
        partner[ctx.seat_rank[u]] = ctx.seat_rank[v];
        partner[ctx.seat_rank[v]] = ctx.seat_rank[u];
    }

    struct Candidate {
        std::uint32_t mask = 0;
        const std::vector<int>* agents = nullptr;
        std::vector<int> agent_of_color;
    };

    auto run_trial = [&](const std::vector<std::uint8_t>& key)
        -> std::optional<detail::ExistenceTrial> {
        const std::uint8_t* sep = key.data();
        const std::uint8_t* col = key.data() + n;

        std::vector<char> red(n, 0);
        for (int p = 0; p < n; ++p) red[p] = sep[p] == 0;
        std::vector<std::vector<int>> comps =
            detail::preference_components(inst.profile, /*positive_only=*/true, red);

        // A component is disqualified outright if some blue agent likes one
        // of its members: that agent would sit isolated and envy into the
        // component's seats.
        std::vector<char> blue_liked(n, 0);
        for (const Arc& a : inst.profile.arcs())
            if (a.weight.is_positive() && sep[a.from] == 1) blue_liked[a.to] = 1;

        std::vector<Candidate> candidates;
        for (const auto& comp : comps) {
            if (static_cast<int>(comp.size()) > k) continue;
            Candidate cand;
            bool distinct = true;
            for (int p : comp) {
                std::uint32_t bit = 1u << col[p];
                if (cand.mask & bit) { distinct = false; break; }
                cand.mask |= bit;
            }
            if (!distinct) continue;
            bool ok = true;
            for (int p : comp)
                if (blue_liked[p]) { ok = false; break; }
            if (!ok) continue;

            cand.agent_of_color.assign(k, -1);
            for (int p : comp) cand.agent_of_color[col[p]] = p;
            // Per-agent conditions on the matching edge dictated by the
            // colors: a member seated with its own component must get its
            // best in-component value, non-negatively; a member whose
            // seat partner lies outside must not prefer anyone inside.
            for (int p : comp) {
                int pc = partner[col[p]];
                int q = cand.agent_of_color[pc];
                Rational best_inside;  // max preference of p toward the component
                bool first = true;
                for (int x : comp) {
                    if (x == p) continue;
                    Rational v = inst.profile.get(p, x);
                    if (first || v > best_inside) { best_inside = v; first = false; }
                }
                if (first) best_inside = Rational(0);
                if (q != -1) {
                    Rational u = inst.profile.get(p, q);
                    if (u.is_negative() || u < best_inside) { ok = false; break; }
                } else {
                    if (best_inside.is_positive()) { ok = false; break; }
                }
            }
            if (!ok) continue;
            candidates.push_back(std::move(cand));
        }

        // Conflict arcs: two components whose colors land on the two ends
        // of the same matching edge with a negative preference across.
        const int m = static_cast<int>(candidates.size());
        std::vector<std::vector<char>> conflict(m, std::vector<char>(m, 0));
        for (int i = 0; i < m; ++i)
            for (int j = i + 1; j < m; ++j) {
                if (candidates[i].mask & candidates[j].mask) continue;
                bool bad = false;
                for (int c = 0; c < k && !bad; ++c) {
                    int p = candidates[i].agent_of_color[c];
                    if (p == -1) continue;
                    int q = candidates[j].agent_of_color[partner[c]];
                    if (q == -1) continue;
                    if (inst.profile.get(p, q).is_negative() ||
                        inst.profile.get(q, p).is_negative())
                        bad = true;
                }
                if (bad) conflict[i][j] = conflict[j][i] = 1;
            }

        // Try every partition of the colors into blocks; each block must be
        // covered by exactly one surviving component.
        std::optional<detail::ExistenceTrial> result;
        detail::for_each_partition(k, [&](const std::vector<int>& block_of) {
            if (result) return;
            int blocks = 0;
            for (int c = 0; c < k; ++c) blocks = std::max(blocks, block_of[c] + 1);
            std::vector<std::uint32_t> block_mask(blocks, 0);
            for (int c = 0; c < k; ++c) block_mask[block_of[c]] |= 1u << c;

            // Vertices of the multicolored independent set instance,
            // grouped by block.
            std::vector<std::vector<int>> verts(blocks);
            for (int i = 0; i < m; ++i)
                for (int b = 0; b < blocks; ++b)
                    if (candidates[i].mask == block_mask[b]) verts[b].push_back(i);
            bool feasible = true;
            for (int b = 0; b < blocks; ++b)
                if (verts[b].empty()) { feasible = false; break; }
            if (!feasible) return;

            // Branch on a vertex of minimum conflict degree among the live
            // candidates or one of its conflict neighbors; selecting a
            // vertex removes its whole block and everything conflicting.
            // A completed selection is accepted only if the assembled
            // arrangement passes the full envy-freeness checker.
            std::vector<int> selection;
            std::vector<char> alive_block(blocks, 1);
            std::vector<char> dead(m, 0);
            std::function<bool()> branch = [&]() -> bool {
                int need = -1;
                for (int b = 0; b < blocks; ++b)
                    if (alive_block[b]) { need = b; break; }
                if (need == -1) {
                    detail::ExistenceTrial trial;
                    trial.placed.assign(k, -1);
                    for (int v : selection)
                        for (int c = 0; c < k; ++c)
                            if (candidates[v].agent_of_color[c] != -1)
                                trial.placed[c] = candidates[v].agent_of_color[c];
                    Arrangement arr =
                        detail::complete_arrangement(inst, seats.nonisolated, trial.placed);
                    if (!check_envy_free(inst, arr).ok) return false;
                    result = std::move(trial);
                    return true;
                }
                // Minimum-degree live vertex across all live blocks.
                int pivot = -1, pivot_deg = 0;
                for (int b = 0; b < blocks; ++b) {
                    if (!alive_block[b]) continue;
                    bool any = false;
                    for (int v : verts[b]) {
                        if (dead[v]) continue;
                        any = true;
                        int deg = 0;
                        for (int u = 0; u < m; ++u)
                            if (!dead[u] && conflict[v][u]) ++deg;
                        if (pivot == -1 || deg < pivot_deg) {
                            pivot = v;
                            pivot_deg = deg;
                        }
                    }
                    if (!any) return false;  // block emptied: dead end
                }
                if (pivot == -1) return false;
                std::vector<int> options{pivot};
                for (int u = 0; u < m; ++u)
                    if (!dead[u] && u != pivot && conflict[pivot][u]) options.push_back(u);
                for (int v : options) {
                    if (dead[v]) continue;
                    int vb = -1;
                    for (int b = 0; b < blocks; ++b)
                        if (alive_block[b] && candidates[v].mask == block_mask[b]) { vb = b; break; }
                    if (vb == -1) continue;
                    std::vector<int> killed;
                    for (int u = 0; u < m; ++u)
                        if (!dead[u] && (conflict[v][u] || (u != v && candidates[u].mask == block_mask[vb]))) {
                            dead[u] = 1;
                            killed.push_back(u);
                        }
                    dead[v] = 1;
                    killed.push_back(v);
                    alive_block[vb] = 0;
                    selection.push_back(v);
                    if (branch()) return true;
                    selection.pop_back();
                    alive_block[vb] = 1;
                    for (int u : killed) dead[u] = 0;
                }
                return false;
            };
            branch();
        });
        return result;
    };

    std::uint64_t executed = 0;
    std::optional<detail::ExistenceTrial> found;
    {
        TrialMemo<detail::ExistenceTrial> memo;
        for (std::uint64_t t = 0; t < plan.trials; ++t) {
            std::vector<std::uint8_t> key;
            Coloring sepc = sample_separation(n, config.seed, 2 * t);
            Coloring colc = sample_k_coloring(n, std::max(k, 1), config.seed, 2 * t + 1);
            key = std::move(sepc.color);
            key.insert(key.end(), colc.color.begin(), colc.color.end());
            auto r = memo.run(
                1, [&](std::uint64_t, std::vector<std::uint8_t>& kk) { kk = key; }, run_trial,
                [](const detail::ExistenceTrial&, const detail::ExistenceTrial&) { return false; });
            ++executed;
            if (r) { found = r; break; }
        }
    }
    return detail::existence_outcome(Problem::EFA, inst, seats, "efa-matching-kdelta", config,
                                     executed, found.has_value(), found ? &found->placed : nullptr);
}

/// Dispatcher for envy-free arrangement.
inline SolveOutcome efa_solve(const Instance& inst, const SolverConfig& config = {}) {
    switch (config.algorithm) {
        case Algorithm::Oracle: return oracle_solve(Problem::EFA, inst, config);
        case Algorithm::EfaClique: return efa_clique_nonneg_symmetric(inst, config);
        case Algorithm::EfaNonneg: return efa_nonneg_kdelta(inst, config);
        case Algorithm::EfaMatching: return efa_matching_kdelta(inst, config);
        case Algorithm::Auto: break;
        default: throw DispatchError("algorithm does not solve EFA");
    }
    SeatGraphAnalysis seats = analyze_seats(inst.seats);
    if (seats.k == 0 || detail::oracle_is_tiny(inst, seats))
        return oracle_solve(Problem::EFA, inst, config);
    PreferenceAnalysis prefs = analyze_preferences(inst.profile);
    try {
        if (seats.has(SeatClass::Clique) && prefs.non_negative && prefs.symmetric)
            return efa_clique_nonneg_symmetric(inst, config);
        if (prefs.non_negative) return efa_nonneg_kdelta(inst, config);
        if (seats.has(SeatClass::Matching)) return efa_matching_kdelta(inst, config);
    } catch (const ResourceLimitError&) {
        // fall through to the oracle guard
    }
    try {
        return oracle_solve(Problem::EFA, inst, config);
    } catch (const ResourceLimitError&) {
        throw ResourceLimitError("efa: unsupported at this scale");
    }
}

}  // namespace seatarr

#endif
