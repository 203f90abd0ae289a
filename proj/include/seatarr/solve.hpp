#ifndef SEATARR_SOLVE_HPP
#define SEATARR_SOLVE_HPP

#include <cstdint>
#include <optional>
#include <string>

#include "seatarr/model.hpp"

namespace seatarr {

enum class Problem { MWA, MUA, EFA, ESA };

inline const char* problem_name(Problem p) {
    switch (p) {
        case Problem::MWA: return "mwa";
        case Problem::MUA: return "mua";
        case Problem::EFA: return "efa";
        case Problem::ESA: return "esa";
    }
    return "?";
}

inline Problem parse_problem(const std::string& s) {
    if (s == "mwa") return Problem::MWA;
    if (s == "mua") return Problem::MUA;
    if (s == "efa") return Problem::EFA;
    if (s == "esa") return Problem::ESA;
    throw std::invalid_argument("unknown problem '" + s + "'");
}

/// Result of one solve. MWA/MUA carry `value` and always a certificate;
/// EFA/ESA carry `exists` and a certificate when the answer is yes.
struct SolveOutcome {
    Problem problem = Problem::MWA;
    std::optional<Rational> value;
    std::optional<bool> exists;
    std::optional<Arrangement> certificate;
    std::string algorithm;
    std::uint64_t trials_run = 0;
    std::uint64_t seed = 0;
};

enum class Algorithm {
    Auto,
    Oracle,
    MwaPathCycle,
    MwaStars,
    MwaSymmetric,
    MuaPolynomial,
    MuaPathCycle,
    MuaStars,
    MuaKernel,
    EfaClique,
    EfaNonneg,
    EfaMatching,
    EsaClique,
    EsaKernel,
    EsaSwap,
};

inline const char* algorithm_name(Algorithm a) {
    switch (a) {
        case Algorithm::Auto: return "auto";
        case Algorithm::Oracle: return "oracle";
        case Algorithm::MwaPathCycle: return "mwa-colorcoded-path-cycle";
        case Algorithm::MwaStars: return "mwa-colorcoded-stars";
        case Algorithm::MwaSymmetric: return "mwa-symmetric-kdelta";
        case Algorithm::MuaPolynomial: return "mua-polynomial";
        case Algorithm::MuaPathCycle: return "mua-colorcoded-path-cycle";
        case Algorithm::MuaStars: return "mua-colorcoded-stars";
        case Algorithm::MuaKernel: return "mua-kernel-kdelta";
        case Algorithm::EfaClique: return "efa-clique-nonneg-symmetric";
        case Algorithm::EfaNonneg: return "efa-nonneg-kdelta";
        case Algorithm::EfaMatching: return "efa-matching-kdelta";
        case Algorithm::EsaClique: return "esa-clique-nonneg";
        case Algorithm::EsaKernel: return "esa-kernel-kdelta";
        case Algorithm::EsaSwap: return "esa-swap-dynamics";
    }
    return "?";
}

inline Algorithm parse_algorithm(const std::string& s) {
    for (Algorithm a :
         {Algorithm::Auto, Algorithm::Oracle, Algorithm::MwaPathCycle, Algorithm::MwaStars,
          Algorithm::MwaSymmetric, Algorithm::MuaPolynomial, Algorithm::MuaPathCycle,
          Algorithm::MuaStars, Algorithm::MuaKernel, Algorithm::EfaClique, Algorithm::EfaNonneg,
          Algorithm::EfaMatching, Algorithm::EsaClique, Algorithm::EsaKernel, Algorithm::EsaSwap})
        if (s == algorithm_name(a)) return a;
    throw std::invalid_argument("unknown algorithm '" + s + "'");
}

/// Knobs shared by every solver. Randomized solvers are pure functions of
/// (instance, config): the master seed fully determines their output.
struct SolverConfig {
    Algorithm algorithm = Algorithm::Auto;
    std::uint64_t seed = 1;
    double delta = 1e-6;                     // per-solve miss probability budget
    std::uint64_t oracle_cap = 100'000'000;  // max arrangements the oracle enumerates
    std::uint64_t trial_cap = 100'000'000;   // max Monte Carlo trials per solve
    int partition_cap = 10;                  // max k for seat-partition enumeration
    int threads = 1;                         // worker hint for the oracle
};

}  // namespace seatarr

#endif
