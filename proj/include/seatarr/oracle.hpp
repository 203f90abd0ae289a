#ifndef SEATARR_ORACLE_HPP
#define SEATARR_ORACLE_HPP

#include <algorithm>
#include <future>
#include <optional>
#include <vector>

#include "seatarr/errors.hpp"
#include "seatarr/model.hpp"
#include "seatarr/solve.hpp"

namespace seatarr {
namespace detail {

/// Completes a placement of agents on the non-isolated seats to a full
/// arrangement: the remaining agents take the isolated seats in ascending
/// index order. `placed[i]` is the agent at `nonisolated[i]`.
inline Arrangement complete_arrangement(const Instance& inst, const std::vector<int>& nonisolated,
                                        const std::vector<int>& placed) {
    const int n = inst.agent_count();
    std::vector<int> seat_of(n, -1);
    std::vector<char> seat_used(n, 0);
    for (size_t i = 0; i < placed.size(); ++i) {
        seat_of[placed[i]] = nonisolated[i];
        seat_used[nonisolated[i]] = 1;
    }
    int next_seat = 0;
    for (int p = 0; p < n; ++p) {
        if (seat_of[p] != -1) continue;
        while (seat_used[next_seat]) ++next_seat;
        seat_of[p] = next_seat;
        seat_used[next_seat] = 1;
    }
    return Arrangement(std::move(seat_of));
}

/// Welfare of a placement: sum over non-isolated seat edges of the mutual
/// preferences of their occupants (isolated agents contribute nothing).
inline Rational placement_welfare(const Instance& inst, const std::vector<int>& nonisolated,
                                  const std::vector<int>& seat_rank,
                                  const std::vector<int>& placed) {
    Rational sum;
    for (size_t i = 0; i < placed.size(); ++i) {
        int seat = nonisolated[i];
        for (int v : inst.seats.neighbors(seat)) {
            int q = placed[seat_rank[v]];
            sum += inst.profile.get(placed[i], q);
        }
    }
    return sum;
}

/// Minimum utility of a placement; isolated agents pin it at <= 0 whenever
/// any seat is isolated.
inline Rational placement_egalitarian(const Instance& inst, const std::vector<int>& nonisolated,
                                      const std::vector<int>& seat_rank,
                                      const std::vector<int>& placed) {
    std::optional<Rational> best;
    if (placed.size() < static_cast<size_t>(inst.agent_count())) best = Rational(0);
    for (size_t i = 0; i < placed.size(); ++i) {
        Rational u;
        int seat = nonisolated[i];
        for (int v : inst.seats.neighbors(seat)) u += inst.profile.get(placed[i], placed[seat_rank[v]]);
        if (!best || u < *best) best = u;
    }
    return best ? *best : Rational(0);
}

inline bool next_combination(std::vector<int>& c, int n) {
    const int k = static_cast<int>(c.size());
    for (int i = k - 1; i >= 0; --i) {
        if (c[i] < n - k + i) {
            ++c[i];
            for (int j = i + 1; j < k; ++j) c[j] = c[j - 1] + 1;
            return true;
        }
    }
    return false;
}

/// Lexicographic rank -> combination, for partitioning work across threads.
inline std::vector<int> unrank_combination(int n, int k, unsigned long long rank,
                                           const std::vector<std::vector<unsigned long long>>& choose) {
    std::vector<int> c(k);
    int x = 0;
    for (int i = 0; i < k; ++i) {
        while (true) {
            unsigned long long block = choose[n - x - 1][k - i - 1];
            if (rank < block) break;
            rank -= block;
            ++x;
        }
        c[i] = x++;
    }
    return c;
}

struct OracleBest {
    bool found = false;
    Rational value;
    std::vector<int> placed;
    unsigned long long order = 0;  // global enumeration index, for tie-breaks
};

}  // namespace detail

/// Exhaustive reference solver: every size-k agent subset in lexicographic
/// order, every assignment of it to the non-isolated seats in permutation
/// order; remaining agents fill the isolated seats in ascending index
/// order. Deterministic; ties resolved by enumeration order. Refuses to
/// run when C(n,k) * k! exceeds config.oracle_cap.
inline SolveOutcome oracle_solve(Problem problem, const Instance& inst,
                                 const SolverConfig& config = {}) {
    const int n = inst.agent_count();
    SeatGraphAnalysis seats = analyze_seats(inst.seats);
    const int k = seats.k;

    // Enumeration size guard: C(n,k)*k! is the falling factorial n!/(n-k)!.
    long double total_ld = 1.0L;
    for (int i = 0; i < k; ++i) total_ld *= static_cast<long double>(n - i);
    if (total_ld > static_cast<long double>(config.oracle_cap))
        throw ResourceLimitError("too large for oracle: C(n,k)*k! exceeds cap");

    unsigned long long k_factorial = 1;
    for (int i = 2; i <= k; ++i) k_factorial *= static_cast<unsigned long long>(i);

    std::vector<int> seat_rank(n, -1);  // seat id -> index in `nonisolated`
    for (int i = 0; i < k; ++i) seat_rank[seats.nonisolated[i]] = i;

    const bool maximize = problem == Problem::MWA || problem == Problem::MUA;

    // Pascal's triangle for subset unranking.
    std::vector<std::vector<unsigned long long>> choose(n + 1,
                                                        std::vector<unsigned long long>(k + 1, 0));
    for (int i = 0; i <= n; ++i) {
        choose[i][0] = 1;
        for (int j = 1; j <= std::min(i, k); ++j)
            choose[i][j] = choose[i - 1][j - 1] + (i - 1 >= j ? choose[i - 1][j] : 0);
    }
    const unsigned long long subsets = choose[n][k];

    auto evaluate = [&](const std::vector<int>& placed) -> Rational {
        return problem == Problem::MWA
                   ? detail::placement_welfare(inst, seats.nonisolated, seat_rank, placed)
                   : detail::placement_egalitarian(inst, seats.nonisolated, seat_rank, placed);
    };
    auto accepts = [&](const std::vector<int>& placed) -> bool {
        Arrangement arr = detail::complete_arrangement(inst, seats.nonisolated, placed);
        return problem == Problem::EFA ? check_envy_free(inst, arr).ok
                                       : check_exchange_stable(inst, arr).ok;
    };

    // Scans subsets with lexicographic ranks in [first, last).
    auto scan = [&](unsigned long long first, unsigned long long last) {
        detail::OracleBest best;
        if (first >= last) return best;
        std::vector<int> subset = detail::unrank_combination(n, k, first, choose);
        unsigned long long order = first * k_factorial;
        for (unsigned long long r = first; r < last; ++r) {
            std::vector<int> placed = subset;  // ascending = first permutation
            do {
                if (maximize) {
                    Rational v = evaluate(placed);
                    if (!best.found || v > best.value) {
                        best.found = true;
                        best.value = v;
                        best.placed = placed;
                        best.order = order;
                    }
                } else if (accepts(placed)) {
                    best.found = true;
                    best.placed = placed;
                    best.order = order;
                    return best;
                }
                ++order;
            } while (std::next_permutation(placed.begin(), placed.end()));
            detail::next_combination(subset, n);
        }
        return best;
    };

    detail::OracleBest best;
    const int workers = std::max(1, config.threads);
    if (workers == 1 || subsets < 64) {
        best = scan(0, subsets);
    } else {
        std::vector<std::future<detail::OracleBest>> futures;
        unsigned long long chunk = (subsets + workers - 1) / workers;
        for (int w = 0; w < workers; ++w) {
            unsigned long long lo = std::min<unsigned long long>(w * chunk, subsets);
            unsigned long long hi = std::min<unsigned long long>(lo + chunk, subsets);
            futures.push_back(std::async(std::launch::async, [&scan, lo, hi] { return scan(lo, hi); }));
        }
        for (auto& f : futures) {
            detail::OracleBest b = f.get();
            if (!b.found) continue;
            bool take = !best.found;
            if (!take && maximize)
                take = b.value > best.value || (b.value == best.value && b.order < best.order);
            else if (!take)
                take = b.order < best.order;
            if (take) best = b;
        }
    }

    SolveOutcome out;
    out.problem = problem;
    out.algorithm = "oracle";
    out.seed = config.seed;
    if (maximize) {
        out.value = best.value;
        out.certificate = detail::complete_arrangement(inst, seats.nonisolated, best.placed);
    } else {
        out.exists = best.found;
        if (best.found)
            out.certificate = detail::complete_arrangement(inst, seats.nonisolated, best.placed);
    }
    return out;
}

}  // namespace seatarr

#endif
