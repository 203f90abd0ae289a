#ifndef SEATARR_MODEL_HPP
#define SEATARR_MODEL_HPP

#include <algorithm>
#include <optional>
#include <set>
#include <stdexcept>
#include <unordered_map>
#include <utility>
#include <vector>

#include "seatarr/rational.hpp"

namespace seatarr {

/// One nonzero directed preference: `from` values `to` at `weight`.
struct Arc {
    int from = 0;
    int to = 0;
    Rational weight;

    friend bool operator==(const Arc& a, const Arc& b) {
        return a.from == b.from && a.to == b.to && a.weight == b.weight;
    }
};

/// Cardinal preferences of n agents over each other. Only nonzero weights
/// are stored; lookups for absent pairs return zero. Self-arcs are
/// rejected and explicit zero arcs are normalized away on construction.
class PreferenceProfile {
public:
    explicit PreferenceProfile(int agent_count, std::vector<Arc> arcs = {})
        : n_(agent_count), out_(agent_count), in_(agent_count) {
        if (agent_count < 0) throw std::invalid_argument("profile: negative agent count");
        std::sort(arcs.begin(), arcs.end(), [](const Arc& a, const Arc& b) {
            return std::pair(a.from, a.to) < std::pair(b.from, b.to);
        });
        for (const Arc& a : arcs) {
            if (a.from < 0 || a.from >= n_ || a.to < 0 || a.to >= n_)
                throw std::invalid_argument("profile: arc endpoint out of range");
            if (a.from == a.to) throw std::invalid_argument("profile: self-arc");
            if (a.weight.is_zero()) continue;
            if (!arcs_.empty() && arcs_.back().from == a.from && arcs_.back().to == a.to)
                throw std::invalid_argument("profile: duplicate arc");
            arcs_.push_back(a);
            out_[a.from].emplace_back(a.to, a.weight);
            in_[a.to].push_back(a.from);
            index_.emplace(key(a.from, a.to), a.weight);
        }
    }

    int agent_count() const { return n_; }

    /// Satisfaction of `from` toward `to`; zero when no arc is stored.
    const Rational& get(int from, int to) const {
        check_agent(from);
        check_agent(to);
        auto it = index_.find(key(from, to));
        static const Rational kZero;
        return it == index_.end() ? kZero : it->second;
    }

    const std::vector<std::pair<int, Rational>>& out_arcs(int agent) const {
        check_agent(agent);
        return out_[agent];
    }

    /// Agents with a nonzero preference toward `agent`.
    const std::vector<int>& in_neighbors(int agent) const {
        check_agent(agent);
        return in_[agent];
    }

    /// All stored arcs, sorted by (from, to).
    const std::vector<Arc>& arcs() const { return arcs_; }

    friend bool operator==(const PreferenceProfile& a, const PreferenceProfile& b) {
        return a.n_ == b.n_ && a.arcs_ == b.arcs_;
    }

private:
    int n_;
    std::vector<Arc> arcs_;
    std::vector<std::vector<std::pair<int, Rational>>> out_;
    std::vector<std::vector<int>> in_;
    std::unordered_map<long long, Rational> index_;

    static long long key(int from, int to) {
        return (static_cast<long long>(from) << 32) | static_cast<unsigned>(to);
    }
    void check_agent(int agent) const {
        if (agent < 0 || agent >= n_) throw std::invalid_argument("profile: agent out of range");
    }
};

/// Undirected simple graph of seats. Edges are stored normalized
/// (u < v, sorted, no duplicates).
class SeatGraph {
public:
    explicit SeatGraph(int vertex_count, std::vector<std::pair<int, int>> edges = {})
        : n_(vertex_count), adj_(vertex_count) {
        if (vertex_count < 0) throw std::invalid_argument("seat graph: negative vertex count");
        for (auto& [u, v] : edges) {
            if (u < 0 || u >= n_ || v < 0 || v >= n_)
                throw std::invalid_argument("seat graph: edge endpoint out of range");
            if (u == v) throw std::invalid_argument("seat graph: loop edge");
            if (u > v) std::swap(u, v);
        }
        std::sort(edges.begin(), edges.end());
        if (std::adjacent_find(edges.begin(), edges.end()) != edges.end())
            throw std::invalid_argument("seat graph: duplicate edge");
        edges_ = std::move(edges);
        for (auto [u, v] : edges_) {
            adj_[u].push_back(v);
            adj_[v].push_back(u);
        }
        for (auto& a : adj_) std::sort(a.begin(), a.end());
    }

    int vertex_count() const { return n_; }
    const std::vector<std::pair<int, int>>& edges() const { return edges_; }
    const std::vector<int>& neighbors(int v) const {
        if (v < 0 || v >= n_) throw std::invalid_argument("seat graph: vertex out of range");
        return adj_[v];
    }
    int degree(int v) const { return static_cast<int>(neighbors(v).size()); }

    friend bool operator==(const SeatGraph& a, const SeatGraph& b) {
        return a.n_ == b.n_ && a.edges_ == b.edges_;
    }

private:
    int n_;
    std::vector<std::pair<int, int>> edges_;
    std::vector<std::vector<int>> adj_;
};

/// A full problem instance: one agent per seat.
struct Instance {
    PreferenceProfile profile;
    SeatGraph seats;

    Instance(PreferenceProfile p, SeatGraph s) : profile(std::move(p)), seats(std::move(s)) {
        if (profile.agent_count() != seats.vertex_count())
            throw std::invalid_argument("instance: agent count != seat count");
    }
    int agent_count() const { return profile.agent_count(); }

    friend bool operator==(const Instance& a, const Instance& b) {
        return a.profile == b.profile && a.seats == b.seats;
    }
};

/// Bijection agents -> seats.
class Arrangement {
public:
    explicit Arrangement(std::vector<int> seat_of_agent) : seat_of_(std::move(seat_of_agent)) {
        const int n = static_cast<int>(seat_of_.size());
        agent_at_.assign(n, -1);
        for (int p = 0; p < n; ++p) {
            int s = seat_of_[p];
            if (s < 0 || s >= n) throw std::invalid_argument("arrangement: seat out of range");
            if (agent_at_[s] != -1) throw std::invalid_argument("arrangement: not injective");
            agent_at_[s] = p;
        }
    }

    static Arrangement identity(int n) {
        std::vector<int> v(n);
        for (int i = 0; i < n; ++i) v[i] = i;
        return Arrangement(std::move(v));
    }

    int size() const { return static_cast<int>(seat_of_.size()); }
    int seat_of(int agent) const { return seat_of_.at(agent); }
    int agent_at(int seat) const { return agent_at_.at(seat); }
    const std::vector<int>& assignment() const { return seat_of_; }

    friend bool operator==(const Arrangement& a, const Arrangement& b) {
        return a.seat_of_ == b.seat_of_;
    }

private:
    std::vector<int> seat_of_;
    std::vector<int> agent_at_;
};

enum class SeatClass { Clique, Stars, Path, Cycle, Matching, General };

inline const char* seat_class_name(SeatClass c) {
    switch (c) {
        case SeatClass::Clique: return "clique";
        case SeatClass::Stars: return "stars";
        case SeatClass::Path: return "path";
        case SeatClass::Cycle: return "cycle";
        case SeatClass::Matching: return "matching";
        case SeatClass::General: return "general";
    }
    return "?";
}

/// A star component: one center seat plus its leaf seats. A single edge
/// counts as a star with one leaf; the lower seat index is the center.
struct StarLayout {
    int center = -1;
    std::vector<int> leaves;
};

/// Structure report for a seat graph: the non-isolated seat count k, all
/// graph classes the non-isolated part satisfies, the component layout,
/// and ready-to-use orderings for the class-specific solvers.
struct SeatGraphAnalysis {
    int k = 0;
    std::set<SeatClass> classes;
    std::vector<int> nonisolated;                 // ascending seat ids
    std::vector<std::vector<int>> components;     // non-isolated components, sorted
    std::vector<int> path_order;                  // seats along the path (if Path)
    std::vector<int> cycle_order;                 // seats around the cycle (if Cycle)
    std::vector<StarLayout> stars;                // star decomposition (if Stars)
    std::vector<std::pair<int, int>> matching;    // edge list (if Matching)

    bool has(SeatClass c) const { return classes.count(c) != 0; }
};

/// Preference-structure report.
struct PreferenceAnalysis {
    bool binary = false;
    bool non_negative = false;
    bool positive = false;
    bool symmetric = false;
    bool strict = false;
    int delta_plus = 0;  // max number of nonzero out-arcs per agent
};

/// Checker result: ok, or the lexicographically smallest violating pair.
struct Verdict {
    bool ok = true;
    std::optional<std::pair<int, int>> witness;
};

// ---------------------------------------------------------------------------
// Evaluation

/// Utility of agent p: sum of p's satisfaction toward the occupants of the
/// seats adjacent to p's seat.
inline Rational utility(const Instance& inst, const Arrangement& arr, int p) {
    if (p < 0 || p >= inst.agent_count()) throw std::invalid_argument("utility: agent out of range");
    if (arr.size() != inst.agent_count()) throw std::invalid_argument("utility: arrangement size mismatch");
    Rational sum;
    for (int v : inst.seats.neighbors(arr.seat_of(p))) sum += inst.profile.get(p, arr.agent_at(v));
    return sum;
}

inline Rational welfare(const Instance& inst, const Arrangement& arr) {
    Rational sum;
    for (int p = 0; p < inst.agent_count(); ++p) sum += utility(inst, arr, p);
    return sum;
}

inline Rational egalitarian(const Instance& inst, const Arrangement& arr) {
    if (inst.agent_count() == 0) return Rational(0);
    Rational best = utility(inst, arr, 0);
    for (int p = 1; p < inst.agent_count(); ++p) {
        Rational u = utility(inst, arr, p);
        if (u < best) best = u;
    }
    return best;
}

/// Arrangement with p and q exchanged; swap(arr, p, p) == arr.
inline Arrangement swap_agents(const Arrangement& arr, int p, int q) {
    std::vector<int> seats = arr.assignment();
    if (p < 0 || q < 0 || p >= arr.size() || q >= arr.size())
        throw std::invalid_argument("swap: agent out of range");
    std::swap(seats[p], seats[q]);
    return Arrangement(std::move(seats));
}

/// Utility p would have after swapping seats with q, computed without
/// materializing the swapped arrangement.
inline Rational utility_after_swap(const Instance& inst, const Arrangement& arr, int p, int q) {
    const int seat_p = arr.seat_of(p);
    const int seat_q = arr.seat_of(q);
    Rational sum;
    for (int v : inst.seats.neighbors(seat_q)) {
        int occupant = (v == seat_p) ? q : arr.agent_at(v);
        sum += inst.profile.get(p, occupant);
    }
    return sum;
}

/// True iff p strictly prefers q's seat, i.e. swapping would raise p's utility.
inline bool envies(const Instance& inst, const Arrangement& arr, int p, int q) {
    if (p == q) throw std::invalid_argument("envies: p == q");
    return utility(inst, arr, p) < utility_after_swap(inst, arr, p, q);
}

inline Verdict check_envy_free(const Instance& inst, const Arrangement& arr) {
    const int n = inst.agent_count();
    for (int p = 0; p < n; ++p)
        for (int q = 0; q < n; ++q) {
            if (p == q) continue;
            if (envies(inst, arr, p, q)) return {false, std::pair(p, q)};
        }
    return {};
}

inline Verdict check_exchange_stable(const Instance& inst, const Arrangement& arr) {
    const int n = inst.agent_count();
    for (int p = 0; p < n; ++p)
        for (int q = p + 1; q < n; ++q)
            if (envies(inst, arr, p, q) && envies(inst, arr, q, p)) return {false, std::pair(p, q)};
    return {};
}

// ---------------------------------------------------------------------------
// Classification

inline SeatGraphAnalysis analyze_seats(const SeatGraph& g) {
    SeatGraphAnalysis a;
    const int n = g.vertex_count();
    for (int v = 0; v < n; ++v)
        if (g.degree(v) > 0) a.nonisolated.push_back(v);
    a.k = static_cast<int>(a.nonisolated.size());
    if (a.k == 0) {
        // Edgeless graph: the induced non-isolated subgraph is empty, so
        // none of the structural classes apply.
        a.classes.insert(SeatClass::General);
        return a;
    }

    // Connected components over the non-isolated vertices.
    std::vector<int> comp(n, -1);
    for (int v : a.nonisolated) {
        if (comp[v] != -1) continue;
        int id = static_cast<int>(a.components.size());
        a.components.emplace_back();
        std::vector<int> stack{v};
        comp[v] = id;
        while (!stack.empty()) {
            int u = stack.back();
            stack.pop_back();
            a.components[id].push_back(u);
            for (int w : g.neighbors(u))
                if (comp[w] == -1) {
                    comp[w] = id;
                    stack.push_back(w);
                }
        }
        std::sort(a.components[id].begin(), a.components[id].end());
    }

    // Clique: every pair of non-isolated vertices adjacent.
    bool clique = a.components.size() == 1;
    if (clique)
        for (int v : a.nonisolated)
            if (g.degree(v) != a.k - 1) { clique = false; break; }
    if (clique) a.classes.insert(SeatClass::Clique);

    // Matching: all non-isolated degrees are one.
    bool matching = true;
    for (int v : a.nonisolated)
        if (g.degree(v) != 1) { matching = false; break; }
    if (matching) {
        a.classes.insert(SeatClass::Matching);
        for (const auto& c : a.components) a.matching.emplace_back(c[0], c[1]);
    }

    // Stars: each component has a center adjacent to all others, which are
    // pairwise non-adjacent (equivalently: component of size m with m-1
    // edges and a degree-(m-1) vertex, the rest degree 1).
    bool stars = true;
    std::vector<StarLayout> star_layout;
    for (const auto& c : a.components) {
        const int m = static_cast<int>(c.size());
        int center = -1, leaves_ok = 0;
        for (int v : c) {
            if (g.degree(v) == m - 1 && center == -1 && m > 1)
                center = v;
            else if (g.degree(v) == 1)
                ++leaves_ok;
        }
        if (m == 2) center = c[0];  // a single edge: lower index is the center
        if (center == -1 || leaves_ok != m - 1) { stars = false; break; }
        StarLayout s;
        s.center = center;
        for (int v : c)
            if (v != center) s.leaves.push_back(v);
        star_layout.push_back(std::move(s));
    }
    if (stars) {
        a.classes.insert(SeatClass::Stars);
        a.stars = std::move(star_layout);
    }

    // Path: a single component forming one simple path.
    if (a.components.size() == 1) {
        int deg1 = 0, deg2 = 0;
        for (int v : a.nonisolated) {
            if (g.degree(v) == 1) ++deg1;
            else if (g.degree(v) == 2) ++deg2;
        }
        if (deg1 == 2 && deg1 + deg2 == a.k) {
            a.classes.insert(SeatClass::Path);
            // Order seats from the lower-indexed endpoint.
            int start = -1;
            for (int v : a.nonisolated)
                if (g.degree(v) == 1) { start = v; break; }
            a.path_order.push_back(start);
            int prev = -1, cur = start;
            while (static_cast<int>(a.path_order.size()) < a.k) {
                for (int w : g.neighbors(cur))
                    if (w != prev) {
                        a.path_order.push_back(w);
                        prev = cur;
                        cur = w;
                        break;
                    }
            }
        }
        // Cycle: single component, all degrees two.
        if (deg2 == a.k && a.k >= 3) {
            a.classes.insert(SeatClass::Cycle);
            int start = a.nonisolated[0];
            a.cycle_order.push_back(start);
            int prev = start, cur = std::min(g.neighbors(start)[0], g.neighbors(start)[1]);
            while (cur != start) {
                a.cycle_order.push_back(cur);
                for (int w : g.neighbors(cur))
                    if (w != prev) {
                        prev = cur;
                        cur = w;
                        break;
                    }
            }
        }
    }

    if (a.classes.empty()) a.classes.insert(SeatClass::General);
    return a;
}

inline PreferenceAnalysis analyze_preferences(const PreferenceProfile& profile) {
    PreferenceAnalysis a;
    const int n = profile.agent_count();
    a.binary = a.non_negative = a.symmetric = true;
    for (const Arc& arc : profile.arcs()) {
        if (arc.weight != Rational(1)) a.binary = false;
        if (arc.weight.is_negative()) a.non_negative = false;
        if (profile.get(arc.to, arc.from) != arc.weight) a.symmetric = false;
    }
    // Positive requires every ordered pair to carry a positive weight.
    a.positive = n < 2 || (static_cast<long long>(profile.arcs().size()) ==
                               static_cast<long long>(n) * (n - 1) &&
                           a.non_negative);
    // Strict: per agent, pairwise distinct values over all other agents
    // (absent arcs count as zeros, so at most one zero per agent).
    a.strict = true;
    for (int p = 0; p < n && a.strict; ++p) {
        const auto& out = profile.out_arcs(p);
        int zeros = n - 1 - static_cast<int>(out.size());
        if (zeros > 1) { a.strict = false; break; }
        std::set<Rational> seen;
        for (const auto& [q, w] : out)
            if (!seen.insert(w).second) { a.strict = false; break; }
    }
    for (int p = 0; p < n; ++p)
        a.delta_plus = std::max(a.delta_plus, static_cast<int>(profile.out_arcs(p).size()));
    return a;
}

}  // namespace seatarr

#endif
