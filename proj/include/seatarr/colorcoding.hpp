#ifndef SEATARR_COLORCODING_HPP
#define SEATARR_COLORCODING_HPP

#include <cmath>
#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "seatarr/errors.hpp"

namespace seatarr {

// ---------------------------------------------------------------------------
// Deterministic randomness.
//
// The per-trial stream is splitmix64 seeded with
//   trial_seed(master, trial) = splitmix64(master ^ splitmix64(trial)).
// Constants and test vectors are published in docs/formats.md so other
// implementations can reproduce every coloring bit-for-bit.

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

inline std::uint64_t trial_seed(std::uint64_t master, std::uint64_t trial) {
    return splitmix64(master ^ splitmix64(trial));
}

/// Counter-based splitmix64 stream.
class SplitMix {
public:
    explicit SplitMix(std::uint64_t seed) : state_(seed) {}
    std::uint64_t next() {
        state_ += 0x9E3779B97F4A7C15ULL;
        std::uint64_t z = state_;
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }
    /// Uniform value in [0, bound) via 128-bit multiply-high.
    std::uint32_t next_below(std::uint32_t bound) {
        return static_cast<std::uint32_t>(
            (static_cast<unsigned __int128>(next()) * bound) >> 64);
    }

private:
    std::uint64_t state_;
};

/// Total coloring of the agents with colors [0, palette).
struct Coloring {
    int palette = 0;
    std::vector<std::uint8_t> color;
};

/// i.i.d. uniform k-coloring, a pure function of (n, k, seed, trial).
inline Coloring sample_k_coloring(int n, int k, std::uint64_t seed, std::uint64_t trial) {
    if (k < 1) throw std::invalid_argument("coloring: palette must be >= 1");
    if (k > 255) throw std::invalid_argument("coloring: palette too large");
    Coloring c;
    c.palette = k;
    c.color.resize(n);
    SplitMix rng(trial_seed(seed, trial));
    for (int i = 0; i < n; ++i) c.color[i] = static_cast<std::uint8_t>(rng.next_below(k));
    return c;
}

/// Two-coloring for random separation: color 0 = red, color 1 = blue.
inline Coloring sample_separation(int n, std::uint64_t seed, std::uint64_t trial) {
    return sample_k_coloring(n, 2, seed, trial);
}

// ---------------------------------------------------------------------------
// Trial budgets.

/// Number of independent trials needed so that trials with per-trial
/// success probability at least p miss with probability at most delta:
/// T = ceil(ln(1/delta)/p), since (1-p)^T <= exp(-pT) <= delta.
struct TrialPlan {
    double success_probability = 1.0;
    double delta = 1e-6;
    std::uint64_t trials = 1;
};

inline TrialPlan trial_budget(double p, double delta, std::uint64_t cap = 100'000'000) {
    if (!(p > 0.0) || p > 1.0) throw std::invalid_argument("trial budget: p must be in (0, 1]");
    if (!(delta > 0.0) || delta >= 1.0)
        throw std::invalid_argument("trial budget: delta must be in (0, 1)");
    double t = std::ceil(std::log(1.0 / delta) / p);
    if (!std::isfinite(t) || t > static_cast<double>(cap))
        throw ResourceLimitError("trial budget exceeded: required T=" + std::to_string(t) +
                                 " trials, cap " + std::to_string(cap));
    TrialPlan plan;
    plan.success_probability = p;
    plan.delta = delta;
    plan.trials = t < 1.0 ? 1 : static_cast<std::uint64_t>(t);
    return plan;
}

/// Same, with the success probability given as ln(p) to survive parameter
/// ranges where p itself underflows.
inline TrialPlan trial_budget_log(double ln_p, double delta, std::uint64_t cap = 100'000'000) {
    if (!(ln_p <= 0.0)) throw std::invalid_argument("trial budget: ln(p) must be <= 0");
    if (!(delta > 0.0) || delta >= 1.0)
        throw std::invalid_argument("trial budget: delta must be in (0, 1)");
    double t = std::ceil(std::log(1.0 / delta) * std::exp(-ln_p));
    if (!std::isfinite(t) || t > static_cast<double>(cap))
        throw ResourceLimitError("trial budget exceeded: required T=" + std::to_string(t) +
                                 " trials, cap " + std::to_string(cap));
    TrialPlan plan;
    plan.success_probability = std::exp(ln_p);
    plan.delta = delta;
    plan.trials = t < 1.0 ? 1 : static_cast<std::uint64_t>(t);
    return plan;
}

// ---------------------------------------------------------------------------
// Trial loop.
//
// Distinct trials frequently sample identical colorings (the key space is
// small at the instance sizes the budgets allow), so per-trial results are
// memoized on the coloring bytes. Results are aggregated exactly as if
// every trial had been recomputed: the best result wins, ties go to the
// lowest trial index, which the ascending loop yields for free.

template <typename Result>
class TrialMemo {
public:
    /// Runs `trials` trials. `sample` must fill `key` with the trial's
    /// coloring bytes; `run` computes the trial result from the key.
    /// `better(candidate, incumbent)` returns true if candidate should
    /// replace the incumbent (strict improvement only).
    template <typename SampleFn, typename RunFn, typename BetterFn>
    std::optional<Result> run(std::uint64_t trials, SampleFn&& sample, RunFn&& run,
                              BetterFn&& better) {
        std::optional<Result> best;
        std::vector<std::uint8_t> key;
        for (std::uint64_t t = 0; t < trials; ++t) {
            key.clear();
            sample(t, key);
            auto it = memo_.find(key);
            if (it == memo_.end()) {
                it = memo_.emplace(key, run(key)).first;
            }
            const std::optional<Result>& r = it->second;
            if (r && (!best || better(*r, *best))) best = r;
        }
        return best;
    }

private:
    struct KeyHash {
        size_t operator()(const std::vector<std::uint8_t>& k) const noexcept {
            std::uint64_t h = 0xcbf29ce484222325ULL;
            for (std::uint8_t b : k) {
                h ^= b;
                h *= 0x100000001b3ULL;
            }
            return static_cast<size_t>(h);
        }
    };
    std::unordered_map<std::vector<std::uint8_t>, std::optional<Result>, KeyHash> memo_;
};

}  // namespace seatarr

#endif
