#include <catch2/catch_amalgamated.hpp>

#include "seatarr/generators.hpp"
#include "seatarr/mua.hpp"

#include "pool.hpp"

using namespace seatarr;
using seatarr::testing::make_instance;

namespace {

SolverConfig tight_config(std::uint64_t seed = 1) {
    SolverConfig config;
    config.seed = seed;
    config.delta = 1e-9;
    return config;
}

}  // namespace

TEST_CASE("mua polynomial cases") {
    // non-negative with an isolated seat: optimum 0
    Instance iso = make_instance(4, {{0, 1, 3}, {1, 0, 1}}, {{0, 1}});
    auto out = mua_polynomial_cases(iso);
    REQUIRE(out.has_value());
    CHECK(*out->value == Rational(0));
    CHECK(egalitarian(iso, *out->certificate) == Rational(0));

    // non-negative clique with no isolated seats: every arrangement optimal
    Instance clique = make_instance(
        3, {{0, 1, 1}, {1, 0, 1}, {0, 2, 1}, {2, 0, 1}, {1, 2, 1}, {2, 1, 1}},
        {{0, 1}, {0, 2}, {1, 2}});
    auto cl = mua_polynomial_cases(clique);
    REQUIRE(cl.has_value());
    CHECK(*cl->value == Rational(2));

    // a negative preference makes them inapplicable
    Instance neg = make_instance(3, {{0, 1, -1}}, {{0, 1}});
    CHECK_FALSE(mua_polynomial_cases(neg).has_value());

    // non-negative, no isolates, not a clique: linear kernel via enumeration
    Instance path = make_instance(3, {{0, 1, 2}, {1, 0, 1}, {2, 1, 1}}, {{0, 1}, {1, 2}});
    auto pk = mua_polynomial_cases(path);
    REQUIRE(pk.has_value());
    CHECK(*pk->value == *oracle_solve(Problem::MUA, path).value);
}

TEST_CASE("beta candidates for paths contain zero, singles, and pair sums") {
    PreferenceProfile p(3, {{0, 1, Rational(2)}, {0, 2, Rational(-3)}, {1, 2, Rational(7)}});
    BetaCandidates c = beta_candidates_path_cycle(p);
    auto has = [&](long long v) {
        return std::find(c.values.begin(), c.values.end(), Rational(v)) != c.values.end();
    };
    CHECK(has(0));
    CHECK(has(2));
    CHECK(has(-3));
    CHECK(has(7));
    CHECK(has(-1));  // 2 + (-3)
    CHECK(std::is_sorted(c.values.begin(), c.values.end()));
}

TEST_CASE("mua path solver on hand examples") {
    // three agents on a 3-path: optimum 1 via the order a-b-c
    Instance inst = make_instance(
        3, {{0, 1, 1}, {1, 0, 1}, {1, 2, 2}, {2, 1, 2}, {0, 2, -1}, {2, 0, -1}},
        {{0, 1}, {1, 2}});
    SolveOutcome out = mua_colorcoded_path_cycle(inst, tight_config());
    CHECK(*out.value == Rational(1));
    CHECK(egalitarian(inst, *out.certificate) == Rational(1));

    // all-zero preferences
    Instance zeros = make_instance(4, {}, {{0, 1}, {1, 2}});
    CHECK(*mua_colorcoded_path_cycle(zeros, tight_config()).value == Rational(0));

    // an isolated agent pins the minimum at zero
    Instance pinned = make_instance(3, {{0, 1, 5}, {1, 0, 5}}, {{0, 1}});
    CHECK(*mua_colorcoded_path_cycle(pinned, tight_config()).value == Rational(0));
}

TEST_CASE("mua stars solver on hand examples") {
    // center + one leaf
    Instance star = make_instance(2, {{0, 1, 3}, {1, 0, 2}}, {{0, 1}});
    SolveOutcome out = mua_colorcoded_stars(star, tight_config());
    CHECK(*out.value == Rational(2));

    // all-zero preferences
    Instance zeros = make_instance(3, {}, {{0, 1}, {0, 2}});
    CHECK(*mua_colorcoded_stars(zeros, tight_config()).value == Rational(0));

    // two seats, mutual dislike, no isolated escape: optimum is -1
    Instance glum = make_instance(2, {{0, 1, -1}, {1, 0, -1}}, {{0, 1}});
    CHECK(*mua_colorcoded_stars(glum, tight_config()).value == Rational(-1));
}

TEST_CASE("mua kernelization") {
    SECTION("independent agents reach the analytic optimum zero") {
        Instance inst = make_instance(5, {{0, 1, -5}}, {{0, 1}});
        KernelResult kernel = kernelize_independent(inst);
        REQUIRE(kernel.certificate.has_value());
        CHECK(kernel.independent_agents.size() == 2);
        CHECK(egalitarian(inst, *kernel.certificate) == Rational(0));
        SolveOutcome out = mua_kernelize_kdelta(inst);
        CHECK(*out.value == Rational(0));
    }
    SECTION("dense dislike falls through to the enumeration") {
        std::vector<std::tuple<int, int, long long>> arcs;
        for (int p = 0; p < 5; ++p)
            for (int q = 0; q < 5; ++q)
                if (p != q) arcs.emplace_back(p, q, -1);
        Instance inst = make_instance(5, arcs, {{0, 1}});
        KernelResult kernel = kernelize_independent(inst);
        CHECK_FALSE(kernel.certificate.has_value());
        REQUIRE(kernel.reduced.has_value());
        PreferenceAnalysis prefs = analyze_preferences(inst.profile);
        CHECK(kernel.reduced->agent_count() <= 2 * (1 + 2 * prefs.delta_plus));
        SolveOutcome out = mua_kernelize_kdelta(inst);
        CHECK(*out.value == *oracle_solve(Problem::MUA, inst).value);
        CHECK(*out.value == Rational(-1));
    }
    SECTION("all-zero preferences find the set immediately") {
        Instance inst = make_instance(4, {}, {{0, 1}});
        SolveOutcome out = mua_kernelize_kdelta(inst);
        CHECK(*out.value == Rational(0));
    }
    SECTION("requires an isolated seat") {
        Instance inst = make_instance(2, {{0, 1, -1}}, {{0, 1}});
        CHECK_THROWS_AS(mua_kernelize_kdelta(inst), DispatchError);
    }
}

TEST_CASE("mua kernel preserves the oracle answer") {
    for (std::uint64_t seed = 0; seed < 30; ++seed) {
        GeneratorSpec spec;
        spec.n = 6 + static_cast<int>(seed % 3);
        spec.seat_class = seed % 2 ? SeatClass::Matching : SeatClass::Path;
        spec.k = spec.seat_class == SeatClass::Matching ? 2 : 2 + static_cast<int>(seed % 3);
        spec.pref_class = PrefClass::General;
        spec.delta_cap = 2;
        spec.seed = seed * 11 + 4;
        Instance inst = gen_random(spec).instance;
        CHECK(*mua_kernelize_kdelta(inst).value == *oracle_solve(Problem::MUA, inst).value);
    }
}

TEST_CASE("mua color-coded solvers match the oracle on seeded pools") {
    SECTION("path and cycle") {
        for (std::uint64_t seed = 0; seed < 20; ++seed) {
            GeneratorSpec spec;
            spec.n = 5 + static_cast<int>(seed % 2);
            bool cycle = seed % 2 == 0;
            spec.seat_class = cycle ? SeatClass::Cycle : SeatClass::Path;
            spec.k = 3 + static_cast<int>(seed % 2);
            spec.pref_class = PrefClass::General;
            spec.delta_cap = 3;
            spec.seed = seed * 23 + 5;
            Instance inst = gen_random(spec).instance;
            SolveOutcome fast = mua_colorcoded_path_cycle(inst, tight_config(seed));
            SolveOutcome exact = oracle_solve(Problem::MUA, inst);
            CHECK(*fast.value == *exact.value);
            CHECK(egalitarian(inst, *fast.certificate) == *fast.value);
        }
    }
    SECTION("stars") {
        for (std::uint64_t seed = 0; seed < 20; ++seed) {
            GeneratorSpec spec;
            spec.n = 5 + static_cast<int>(seed % 2);
            spec.seat_class = SeatClass::Stars;
            spec.k = 2 + static_cast<int>(seed % 3);
            spec.pref_class = PrefClass::General;
            spec.delta_cap = 3;
            spec.seed = seed * 29 + 6;
            Instance inst = gen_random(spec).instance;
            SolveOutcome fast = mua_colorcoded_stars(inst, tight_config(seed));
            SolveOutcome exact = oracle_solve(Problem::MUA, inst);
            CHECK(*fast.value == *exact.value);
        }
    }
}

TEST_CASE("oracle optimum is always among the beta candidates") {
    for (std::uint64_t seed = 0; seed < 30; ++seed) {
        GeneratorSpec spec;
        spec.n = 5;
        bool stars = seed % 2 == 0;
        spec.seat_class = stars ? SeatClass::Stars : SeatClass::Path;
        spec.k = 2 + static_cast<int>(seed % 3);
        spec.pref_class = PrefClass::General;
        spec.delta_cap = 3;
        spec.seed = seed * 37 + 7;
        Instance inst = gen_random(spec).instance;
        Rational opt = *oracle_solve(Problem::MUA, inst).value;
        BetaCandidates c = stars ? beta_candidates_stars(inst.profile, 4)
                                 : beta_candidates_path_cycle(inst.profile);
        CHECK(std::find(c.values.begin(), c.values.end(), opt) != c.values.end());
    }
}

TEST_CASE("threshold feasibility is monotone in beta") {
    Instance inst = make_instance(
        4, {{0, 1, 2}, {1, 0, -1}, {1, 2, 4}, {2, 1, 1}, {3, 0, 2}}, {{0, 1}, {1, 2}});
    SeatGraphAnalysis seats = analyze_seats(inst.seats);
    BetaCandidates c = beta_candidates_path_cycle(inst.profile);
    detail::PathThresholdDp dp(inst, seats.k);
    Coloring col = sample_k_coloring(inst.agent_count(), seats.k, 99, 0);
    bool previous = true;
    bool first = true;
    for (const Rational& beta : c.values) {  // ascending scan: feasibility may only fall
        dp.set_beta(beta);
        bool now = dp.feasible_path(col.color, beta, nullptr);
        if (!first) CHECK((previous || !now));
        previous = now;
        first = false;
    }
}
