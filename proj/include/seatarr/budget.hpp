#ifndef SEATARR_BUDGET_HPP
#define SEATARR_BUDGET_HPP

#include <cmath>
#include <map>

#include "seatarr/colorcoding.hpp"
#include "seatarr/model.hpp"

namespace seatarr {
namespace detail {

/// ln of a lower bound on the number of seat-graph automorphisms of the
/// non-isolated part. Seat-pinned colorings succeed for every automorphic
/// relabeling of one optimal arrangement, so this factor tightens the
/// per-trial success bound without giving up soundness. Falls back to 1
/// (ln = 0) for graphs outside the recognized classes.
inline double seat_aut_log_lower_bound(const SeatGraphAnalysis& seats) {
    const int k = seats.k;
    double best = 0.0;
    if (seats.has(SeatClass::Clique)) best = std::max(best, std::lgamma(k + 1.0));
    if (seats.has(SeatClass::Cycle) && k >= 3) best = std::max(best, std::log(2.0 * k));
    if (seats.has(SeatClass::Path) && k >= 2) best = std::max(best, std::log(2.0));
    if (seats.has(SeatClass::Matching)) {
        int m = k / 2;
        best = std::max(best, std::lgamma(m + 1.0) + m * std::log(2.0));
    }
    if (seats.has(SeatClass::Stars)) {
        double ln = 0.0;
        std::map<size_t, int> by_size;
        for (const StarLayout& s : seats.stars) {
            size_t leaves = s.leaves.size();
            ln += leaves == 1 ? std::log(2.0) : std::lgamma(static_cast<double>(leaves) + 1.0);
            ++by_size[leaves];
        }
        for (auto [sz, count] : by_size) ln += std::lgamma(count + 1.0);
        best = std::max(best, ln);
    }
    return best;
}

/// ln of the per-trial success probability of a coloring that must pin the
/// k solution agents to their exact seat colors: |Aut| / k^k.
inline double pinned_coloring_log_success(const SeatGraphAnalysis& seats) {
    const int k = seats.k;
    if (k == 0) return 0.0;
    return seat_aut_log_lower_bound(seats) - k * std::log(static_cast<double>(k));
}

/// ln(2^-(k(1+delta_plus))): success bound of one random-separation coloring.
inline double separation_log_success(int k, int delta_plus) {
    return -static_cast<double>(k) * (1.0 + delta_plus) * std::log(2.0);
}

}  // namespace detail
}  // namespace seatarr

#endif
