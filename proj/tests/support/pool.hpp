#ifndef SEATARR_TESTS_POOL_HPP
#define SEATARR_TESTS_POOL_HPP

// Seeded instance pools shared by the cross-validation and acceptance
// suites. Everything here is a pure function of the given seed.

#include <vector>

#include "seatarr/colorcoding.hpp"
#include "seatarr/generators.hpp"
#include "seatarr/model.hpp"

namespace seatarr::testing {

/// Convenience constructor from integer arc triples.
inline Instance make_instance(int n, const std::vector<std::tuple<int, int, long long>>& arcs,
                              const std::vector<std::pair<int, int>>& seat_edges) {
    std::vector<Arc> list;
    for (auto [from, to, w] : arcs) list.push_back({from, to, Rational(w)});
    return Instance(PreferenceProfile(n, std::move(list)), SeatGraph(n, seat_edges));
}

/// Three-agent fixture: a values b at 1, b values a at -1, c values a at 2;
/// one seat edge plus an isolated seat.
inline Instance instance_i3() {
    return make_instance(3, {{0, 1, 1}, {1, 0, -1}, {2, 0, 2}}, {{0, 1}});
}

/// Random arrangement via seeded Fisher-Yates.
inline Arrangement random_arrangement(int n, std::uint64_t seed) {
    std::vector<int> seats(n);
    for (int i = 0; i < n; ++i) seats[i] = i;
    SplitMix rng(splitmix64(seed));
    for (int i = n - 1; i > 0; --i) {
        int j = static_cast<int>(rng.next_below(static_cast<std::uint32_t>(i + 1)));
        std::swap(seats[i], seats[j]);
    }
    return Arrangement(std::move(seats));
}

/// Instance with a planted envy-free arrangement for non-negative
/// preferences: seated agents' preferences mirror the seat adjacency
/// (uniform positive weight), which makes the identity arrangement
/// envy-free on any seat graph; isolated agents only like each other.
inline Instance planted_envy_free(SeatClass cls, int n, int k, std::uint64_t seed) {
    SplitMix rng(splitmix64(seed));
    SeatGraph seats = detail::build_seat_graph(cls, n, k, rng);
    std::vector<Arc> arcs;
    for (auto [u, v] : seats.edges()) {
        arcs.push_back({u, v, Rational(1)});
        arcs.push_back({v, u, Rational(1)});
    }
    // Decoy preferences among the isolated agents.
    for (int p = k; p < n; ++p)
        for (int q = k; q < n; ++q)
            if (p != q && rng.next_below(3) == 0) arcs.push_back({p, q, Rational(1 + rng.next_below(3))});
    return Instance(PreferenceProfile(n, std::move(arcs)), std::move(seats));
}

}  // namespace seatarr::testing

#endif
