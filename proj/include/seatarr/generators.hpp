#ifndef SEATARR_GENERATORS_HPP
#define SEATARR_GENERATORS_HPP

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

#include "seatarr/colorcoding.hpp"
#include "seatarr/model.hpp"

namespace seatarr {

/// An instance plus the bookkeeping the test harness needs: agent names
/// for serialization and, for reduction-generated instances, the planted
/// decision threshold.
struct GeneratedInstance {
    Instance instance;
    std::vector<std::string> agent_names;
    std::string kind;
    std::optional<Rational> planted_threshold;
    std::optional<int> h;
};

/// Preference structure requested from the random generator.
enum class PrefClass {
    General,
    Binary,
    NonNegative,
    Positive,
    Symmetric,
    SymmetricBinary,
    SymmetricNonNegative,
    Strict,
};

inline const char* pref_class_name(PrefClass c) {
    switch (c) {
        case PrefClass::General: return "general";
        case PrefClass::Binary: return "binary";
        case PrefClass::NonNegative: return "nonneg";
        case PrefClass::Positive: return "positive";
        case PrefClass::Symmetric: return "symmetric";
        case PrefClass::SymmetricBinary: return "symmetric-binary";
        case PrefClass::SymmetricNonNegative: return "symmetric-nonneg";
        case PrefClass::Strict: return "strict";
    }
    return "?";
}

inline PrefClass parse_pref_class(const std::string& s) {
    for (PrefClass c : {PrefClass::General, PrefClass::Binary, PrefClass::NonNegative,
                        PrefClass::Positive, PrefClass::Symmetric, PrefClass::SymmetricBinary,
                        PrefClass::SymmetricNonNegative, PrefClass::Strict})
        if (s == pref_class_name(c)) return c;
    throw std::invalid_argument("unknown preference class '" + s + "'");
}

inline SeatClass parse_seat_class(const std::string& s) {
    for (SeatClass c : {SeatClass::Clique, SeatClass::Stars, SeatClass::Path, SeatClass::Cycle,
                        SeatClass::Matching, SeatClass::General})
        if (s == seat_class_name(c)) return c;
    throw std::invalid_argument("unknown seat class '" + s + "'");
}

struct GeneratorSpec {
    int n = 0;
    SeatClass seat_class = SeatClass::General;
    int k = 0;
    PrefClass pref_class = PrefClass::General;
    int delta_cap = 2;       // max nonzero out-arcs per agent
    int weight_range = 5;    // weights drawn from [-W, W] \ {0} (or [1, W])
    std::uint64_t seed = 1;
};

namespace detail {

inline std::vector<std::string> indexed_names(const char* prefix, int n, int from = 1) {
    std::vector<std::string> names;
    names.reserve(n);
    for (int i = 0; i < n; ++i) names.push_back(prefix + std::to_string(from + i));
    return names;
}

/// Seat graph of the requested class over the first k seats; the rest stay
/// isolated.
inline SeatGraph build_seat_graph(SeatClass cls, int n, int k, SplitMix& rng) {
    if (k < 0 || k > n) throw std::invalid_argument("seat generator: k out of range");
    std::vector<std::pair<int, int>> edges;
    if (k == 0) return SeatGraph(n, edges);
    switch (cls) {
        case SeatClass::Path:
            if (k < 2) throw std::invalid_argument("seat generator: a path needs k >= 2");
            for (int i = 0; i + 1 < k; ++i) edges.emplace_back(i, i + 1);
            break;
        case SeatClass::Cycle:
            if (k < 3) throw std::invalid_argument("seat generator: a cycle needs k >= 3");
            for (int i = 0; i + 1 < k; ++i) edges.emplace_back(i, i + 1);
            edges.emplace_back(k - 1, 0);
            break;
        case SeatClass::Clique:
            if (k < 2) throw std::invalid_argument("seat generator: a clique needs k >= 2");
            for (int i = 0; i < k; ++i)
                for (int j = i + 1; j < k; ++j) edges.emplace_back(i, j);
            break;
        case SeatClass::Matching:
            if (k % 2 != 0) throw std::invalid_argument("seat generator: matching needs even k");
            for (int i = 0; i + 1 < k; i += 2) edges.emplace_back(i, i + 1);
            break;
        case SeatClass::Stars: {
            if (k < 2) throw std::invalid_argument("seat generator: stars need k >= 2");
            int base = 0;
            while (base < k) {
                int rem = k - base;
                int size;
                if (rem <= 3) {
                    size = rem;
                } else {
                    size = 2 + static_cast<int>(rng.next_below(static_cast<std::uint32_t>(rem - 2)));
                    if (rem - size == 1) ++size;  // never strand a single seat
                }
                for (int leaf = base + 1; leaf < base + size; ++leaf) edges.emplace_back(base, leaf);
                base += size;
            }
            break;
        }
        case SeatClass::General: {
            if (k < 2) throw std::invalid_argument("seat generator: general class needs k >= 2");
            // Random edges, then patch isolated vertices so exactly the
            // first k seats are non-isolated.
            std::vector<char> covered(k, 0);
            for (int i = 0; i < k; ++i)
                for (int j = i + 1; j < k; ++j)
                    if (rng.next_below(k) < 2) {
                        edges.emplace_back(i, j);
                        covered[i] = covered[j] = 1;
                    }
            for (int i = 0; i < k; ++i) {
                if (covered[i]) continue;
                int other = static_cast<int>(rng.next_below(static_cast<std::uint32_t>(k - 1)));
                if (other >= i) ++other;
                edges.emplace_back(std::min(i, other), std::max(i, other));
                covered[i] = covered[other] = 1;
            }
            std::sort(edges.begin(), edges.end());
            edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
            break;
        }
    }
    return SeatGraph(n, edges);
}

inline Rational random_weight(PrefClass cls, int range, SplitMix& rng) {
    switch (cls) {
        case PrefClass::Binary:
        case PrefClass::SymmetricBinary:
            return Rational(1);
        case PrefClass::NonNegative:
        case PrefClass::Positive:
        case PrefClass::SymmetricNonNegative:
            return Rational(1 + static_cast<int>(rng.next_below(range)));
        default: {
            int magnitude = 1 + static_cast<int>(rng.next_below(range));
            return rng.next_below(2) == 0 ? Rational(magnitude) : Rational(-magnitude);
        }
    }
}

inline PreferenceProfile build_preferences(PrefClass cls, int n, int delta_cap, int range,
                                           SplitMix& rng) {
    std::vector<Arc> arcs;
    switch (cls) {
        case PrefClass::Positive: {
            for (int p = 0; p < n; ++p)
                for (int q = 0; q < n; ++q)
                    if (p != q) arcs.push_back({p, q, random_weight(cls, range, rng)});
            break;
        }
        case PrefClass::Strict: {
            // Per agent all values over the others must be pairwise
            // distinct; absent arcs are zeros, so at most one zero fits.
            if (2 * range < n - 1)
                throw std::invalid_argument("strict generator: weight range too small");
            for (int p = 0; p < n; ++p) {
                std::set<Rational> used;
                for (int q = 0; q < n; ++q) {
                    if (q == p) continue;
                    Rational w;
                    int retries = 0;
                    do {
                        int magnitude = 1 + static_cast<int>(rng.next_below(range));
                        w = rng.next_below(2) == 0 ? Rational(magnitude) : Rational(-magnitude);
                        if (++retries > 1000)
                            throw std::invalid_argument(
                                "strict generator: could not sample distinct values");
                    } while (used.count(w));
                    used.insert(w);
                    arcs.push_back({p, q, w});
                }
            }
            break;
        }
        case PrefClass::Symmetric:
        case PrefClass::SymmetricBinary:
        case PrefClass::SymmetricNonNegative: {
            std::vector<int> degree(n, 0);
            // Sample up to n*delta_cap/2 mirrored pairs under the degree cap.
            int attempts = n * delta_cap * 2;
            for (int a = 0; a < attempts && n >= 2; ++a) {
                int p = static_cast<int>(rng.next_below(n));
                int q = static_cast<int>(rng.next_below(n - 1));
                if (q >= p) ++q;
                if (degree[p] >= delta_cap || degree[q] >= delta_cap) continue;
                bool present = false;
                for (const Arc& arc : arcs)
                    if (arc.from == std::min(p, q) && arc.to == std::max(p, q)) {
                        present = true;
                        break;
                    }
                if (present) continue;
                Rational w = random_weight(cls, range, rng);
                arcs.push_back({std::min(p, q), std::max(p, q), w});
                ++degree[p];
                ++degree[q];
            }
            std::vector<Arc> mirrored;
            for (const Arc& a : arcs) {
                mirrored.push_back(a);
                mirrored.push_back({a.to, a.from, a.weight});
            }
            arcs = std::move(mirrored);
            break;
        }
        default: {  // General, Binary, NonNegative
            for (int p = 0; p < n && n >= 2; ++p) {
                int out = static_cast<int>(rng.next_below(delta_cap + 1));
                out = std::min(out, n - 1);
                std::vector<int> targets;
                for (int a = 0; a < 4 * out && static_cast<int>(targets.size()) < out; ++a) {
                    int q = static_cast<int>(rng.next_below(n - 1));
                    if (q >= p) ++q;
                    if (std::find(targets.begin(), targets.end(), q) == targets.end())
                        targets.push_back(q);
                }
                for (int q : targets) arcs.push_back({p, q, random_weight(cls, range, rng)});
            }
            break;
        }
    }
    return PreferenceProfile(n, std::move(arcs));
}

}  // namespace detail

/// The running four-agent example: preference arcs p1->p2 of -1, p2->p1 of
/// 3, p3->p2 of 1, p4->p2 of 2, and a triangle of seats plus one isolated
/// seat.
inline GeneratedInstance gen_figure1() {
    PreferenceProfile profile(4, {{0, 1, Rational(-1)},
                                  {1, 0, Rational(3)},
                                  {2, 1, Rational(1)},
                                  {3, 1, Rational(2)}});
    SeatGraph seats(4, {{0, 1}, {0, 2}, {1, 2}});
    GeneratedInstance g{Instance(std::move(profile), std::move(seats)),
                        detail::indexed_names("p", 4),
                        "figure1",
                        std::nullopt,
                        std::nullopt};
    return g;
}

/// Seeded random instance of the requested seat and preference class.
/// Deterministic per spec (same spec twice gives identical instances).
inline GeneratedInstance gen_random(const GeneratorSpec& spec) {
    if (spec.n < 1) throw std::invalid_argument("random generator: n must be positive");
    if (spec.delta_cap < 0) throw std::invalid_argument("random generator: negative delta cap");
    if (spec.weight_range < 1)
        throw std::invalid_argument("random generator: weight range must be positive");
    SplitMix rng(splitmix64(spec.seed));
    SeatGraph seats = detail::build_seat_graph(spec.seat_class, spec.n, spec.k, rng);
    PreferenceProfile profile =
        detail::build_preferences(spec.pref_class, spec.n, spec.delta_cap, spec.weight_range, rng);
    GeneratedInstance g{Instance(std::move(profile), std::move(seats)),
                        detail::indexed_names("p", spec.n),
                        "random",
                        std::nullopt,
                        std::nullopt};
    return g;
}

/// Clique search planted into welfare maximization: one agent per source
/// vertex, mutual weight 1 per source edge, a size-h clique of seats. The
/// source graph has a size-h clique iff the optimal welfare reaches
/// h(h-1).
inline GeneratedInstance gen_clique_to_mwa(const SeatGraph& source, int h) {
    const int n = source.vertex_count();
    if (h < 1 || h > n) throw std::invalid_argument("clique reduction: h out of range");
    std::vector<Arc> arcs;
    for (auto [u, v] : source.edges()) {
        arcs.push_back({u, v, Rational(1)});
        arcs.push_back({v, u, Rational(1)});
    }
    std::vector<std::pair<int, int>> seat_edges;
    for (int i = 0; i < h; ++i)
        for (int j = i + 1; j < h; ++j) seat_edges.emplace_back(i, j);
    GeneratedInstance g{Instance(PreferenceProfile(n, std::move(arcs)), SeatGraph(n, seat_edges)),
                        detail::indexed_names("v", n),
                        "clique_to_mwa",
                        Rational(static_cast<long long>(h) * (h - 1)),
                        h};
    return g;
}

/// Independent-set search planted into exchange stability: vertex agents
/// dislike their source neighbors; two gadget agents force the clique of
/// h+1 seats to hold x1 plus h pairwise non-adjacent vertex agents. The
/// instance admits an exchange-stable arrangement iff the source graph has
/// a size-h independent set.
inline GeneratedInstance gen_is_to_esa(const SeatGraph& source, int h) {
    const int nn = source.vertex_count();
    if (h < 1 || h > nn) throw std::invalid_argument("independent-set reduction: h out of range");
    const int n = nn + 2;
    const int x1 = nn, x2 = nn + 1;
    std::vector<Arc> arcs;
    for (auto [u, v] : source.edges()) {
        arcs.push_back({u, v, Rational(-1)});
        arcs.push_back({v, u, Rational(-1)});
    }
    for (int i = 0; i < nn; ++i) {
        arcs.push_back({i, x2, Rational(h)});
        arcs.push_back({x1, i, Rational(1)});
        arcs.push_back({x2, i, Rational(-1)});
    }
    arcs.push_back({x1, x2, Rational(-h)});
    arcs.push_back({x2, x1, Rational(h)});
    std::vector<std::pair<int, int>> seat_edges;
    for (int i = 0; i < h + 1; ++i)
        for (int j = i + 1; j < h + 1; ++j) seat_edges.emplace_back(i, j);
    std::vector<std::string> names = detail::indexed_names("v", nn);
    names.push_back("x1");
    names.push_back("x2");
    GeneratedInstance g{Instance(PreferenceProfile(n, std::move(arcs)), SeatGraph(n, seat_edges)),
                        std::move(names),
                        "is_to_esa",
                        std::nullopt,
                        h};
    return g;
}

/// Hamiltonian path planted into welfare maximization on a single seat
/// path: the source graph has a Hamiltonian path iff the optimal welfare
/// reaches 2(n-1).
inline GeneratedInstance gen_ham_to_mwa(const SeatGraph& source) {
    const int n = source.vertex_count();
    if (n < 1) throw std::invalid_argument("hamiltonian reduction: empty graph");
    std::vector<Arc> arcs;
    for (auto [u, v] : source.edges()) {
        arcs.push_back({u, v, Rational(1)});
        arcs.push_back({v, u, Rational(1)});
    }
    std::vector<std::pair<int, int>> seat_edges;
    for (int i = 0; i + 1 < n; ++i) seat_edges.emplace_back(i, i + 1);
    GeneratedInstance g{Instance(PreferenceProfile(n, std::move(arcs)), SeatGraph(n, seat_edges)),
                        detail::indexed_names("v", n),
                        "ham_to_mwa",
                        Rational(2LL * (n - 1)),
                        std::nullopt};
    return g;
}

}  // namespace seatarr

#endif
