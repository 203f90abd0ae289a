#include <catch2/catch_amalgamated.hpp>

#include "seatarr/generators.hpp"
#include "seatarr/mwa.hpp"

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

TEST_CASE("mwa path solver on a hand example") {
    // path of three seats plus one isolated; symmetric weights
    Instance inst = make_instance(
        4, {{0, 1, 2}, {1, 0, 2}, {1, 2, 3}, {2, 1, 3}, {0, 2, -5}, {2, 0, -5}},
        {{0, 1}, {1, 2}});
    SolveOutcome out = mwa_colorcoded_path_cycle(inst, tight_config());
    CHECK(*out.value == Rational(10));
    CHECK(welfare(inst, *out.certificate) == Rational(10));
    CHECK(out.trials_run > 0);
}

TEST_CASE("mwa path solver on all-zero preferences") {
    Instance inst = make_instance(4, {}, {{0, 1}, {1, 2}});
    SolveOutcome out = mwa_colorcoded_path_cycle(inst, tight_config());
    CHECK(*out.value == Rational(0));
}

TEST_CASE("mwa cycle solver via the planted hamiltonian construction") {
    // the 4-cycle has a hamiltonian path, so the planted threshold 2(n-1)
    // is reached on the 4-seat path
    SeatGraph c4(4, {{0, 1}, {1, 2}, {2, 3}, {0, 3}});
    GeneratedInstance gen = gen_ham_to_mwa(c4);
    CHECK(*gen.planted_threshold == Rational(6));
    SolveOutcome out = mwa_colorcoded_path_cycle(gen.instance, tight_config());
    CHECK(*out.value == Rational(6));

    // and on an actual cycle of seats the tour closes: welfare 8
    Instance cycle_inst(gen.instance.profile, SeatGraph(4, {{0, 1}, {1, 2}, {2, 3}, {0, 3}}));
    SolveOutcome cyc = mwa_colorcoded_path_cycle(cycle_inst, tight_config());
    CHECK(*cyc.value == Rational(8));
}

TEST_CASE("mwa path/cycle solver rejects other classes") {
    Instance inst = make_instance(4, {}, {{0, 1}, {0, 2}, {0, 3}});  // a star
    CHECK_THROWS_AS(mwa_colorcoded_path_cycle(inst, tight_config()), DispatchError);
}

TEST_CASE("mwa stars solver on a single star") {
    Instance inst = make_instance(
        3, {{0, 1, 1}, {1, 0, 1}, {0, 2, 4}},
        {{0, 1}, {0, 2}});
    SolveOutcome out = mwa_colorcoded_stars(inst, tight_config());
    CHECK(*out.value == Rational(6));  // center a: (1+1) + (4+0)
    CHECK(welfare(inst, *out.certificate) == Rational(6));
}

TEST_CASE("mwa stars solver on all-zero preferences") {
    Instance inst = make_instance(4, {}, {{0, 1}, {0, 2}});
    CHECK(*mwa_colorcoded_stars(inst, tight_config()).value == Rational(0));
}

TEST_CASE("mwa stars are independent across stars") {
    // preferences only within the two intended groups
    Instance inst = make_instance(6,
                                  {{0, 1, 3},
                                   {1, 0, 2},
                                   {2, 3, 5},
                                   {3, 2, 1},
                                   {2, 4, 2},
                                   {4, 2, 2}},
                                  {{0, 1}, {2, 3}, {2, 4}});
    SolveOutcome out = mwa_colorcoded_stars(inst, tight_config());
    SolveOutcome exact = oracle_solve(Problem::MWA, inst);
    CHECK(*out.value == *exact.value);
    // per-star optima: the pair {0,1} worth 5, the star {2;3,4} worth 10
    CHECK(*out.value == Rational(15));
}

TEST_CASE("mwa symmetric solver on two preference edges") {
    Instance inst = make_instance(
        6, {{0, 1, 5}, {1, 0, 5}, {2, 3, 1}, {3, 2, 1}},
        {{0, 1}});
    SolveOutcome out = mwa_symmetric_kdelta(inst, tight_config());
    CHECK(*out.value == Rational(10));
    CHECK(welfare(inst, *out.certificate) == Rational(10));
}

TEST_CASE("mwa symmetric solver on all-zero preferences") {
    Instance inst = make_instance(5, {}, {{0, 1}, {1, 2}});
    CHECK(*mwa_symmetric_kdelta(inst, tight_config()).value == Rational(0));
}

TEST_CASE("mwa symmetric solver rejects non-symmetric input") {
    CHECK_THROWS_AS(mwa_symmetric_kdelta(gen_figure1().instance, tight_config()), DispatchError);
}

TEST_CASE("mwa dispatcher routing") {
    // tiny instances go straight to the oracle
    SolveOutcome fig = mwa_solve(gen_figure1().instance);
    CHECK(fig.algorithm == "oracle");
    CHECK(*fig.value == Rational(4));

    // beyond-tiny path instance routes to the color-coded path solver
    GeneratorSpec spec;
    spec.n = 18;
    spec.seat_class = SeatClass::Path;
    spec.k = 6;
    spec.pref_class = PrefClass::General;
    spec.delta_cap = 2;
    spec.seed = 5;
    Instance path_inst = gen_random(spec).instance;
    SolverConfig config;
    config.delta = 1e-2;  // keep the unit test quick
    SolveOutcome routed = mwa_solve(path_inst, config);
    CHECK(routed.algorithm == "mwa-colorcoded-path-cycle");

    // symmetric instance on a seat graph with no class-specific solver
    // routes to the random-separation solver
    GeneratorSpec sym;
    sym.n = 14;
    sym.seat_class = SeatClass::Clique;
    sym.k = 4;
    sym.pref_class = PrefClass::Symmetric;
    sym.delta_cap = 1;
    sym.seed = 6;
    Instance sym_inst = gen_random(sym).instance;
    SolveOutcome sym_out = mwa_solve(sym_inst, config);
    CHECK(sym_out.algorithm == "mwa-symmetric-kdelta");
}

TEST_CASE("mwa solvers match the oracle exactly on seeded pools") {
    // one-sided error bounded by delta = 1e-9: no mismatches tolerated here
    SECTION("path and cycle") {
        for (std::uint64_t seed = 0; seed < 25; ++seed) {
            GeneratorSpec spec;
            spec.n = 5 + static_cast<int>(seed % 3);
            bool cycle = seed % 2 == 0;
            spec.seat_class = cycle ? SeatClass::Cycle : SeatClass::Path;
            spec.k = cycle ? 3 + static_cast<int>(seed % 2) : 2 + static_cast<int>(seed % 3);
            spec.pref_class = PrefClass::General;
            spec.delta_cap = 3;
            spec.seed = seed * 13 + 1;
            Instance inst = gen_random(spec).instance;
            SolveOutcome fast = mwa_colorcoded_path_cycle(inst, tight_config(seed));
            SolveOutcome exact = oracle_solve(Problem::MWA, inst);
            CHECK(*fast.value == *exact.value);
            CHECK(welfare(inst, *fast.certificate) == *fast.value);
        }
    }
    SECTION("stars") {
        for (std::uint64_t seed = 0; seed < 25; ++seed) {
            GeneratorSpec spec;
            spec.n = 5 + static_cast<int>(seed % 3);
            spec.seat_class = SeatClass::Stars;
            spec.k = 2 + static_cast<int>(seed % 4);
            spec.pref_class = PrefClass::General;
            spec.delta_cap = 3;
            spec.seed = seed * 19 + 2;
            Instance inst = gen_random(spec).instance;
            SolveOutcome fast = mwa_colorcoded_stars(inst, tight_config(seed));
            SolveOutcome exact = oracle_solve(Problem::MWA, inst);
            CHECK(*fast.value == *exact.value);
        }
    }
    SECTION("symmetric") {
        for (std::uint64_t seed = 0; seed < 20; ++seed) {
            GeneratorSpec spec;
            spec.n = 5 + static_cast<int>(seed % 2);
            spec.seat_class = seed % 2 ? SeatClass::Clique : SeatClass::General;
            spec.k = 2 + static_cast<int>(seed % 2);
            spec.pref_class = PrefClass::Symmetric;
            spec.delta_cap = 2;
            spec.seed = seed * 7 + 3;
            Instance inst = gen_random(spec).instance;
            SolveOutcome fast = mwa_symmetric_kdelta(inst, tight_config(seed));
            SolveOutcome exact = oracle_solve(Problem::MWA, inst);
            CHECK(*fast.value == *exact.value);
        }
    }
}

TEST_CASE("stars trials pin agent colors to seats") {
    // an instance whose optimum is unique, so the winning placement is
    // forced: the certificate agent on seat i must carry color i in the
    // first trial whose coloring makes that optimum reachable
    Instance inst = make_instance(3, {{0, 1, 7}, {1, 0, 7}, {0, 2, 1}},
                                  {{0, 1}, {0, 2}});
    SolverConfig config = tight_config(123);
    SolveOutcome out = mwa_colorcoded_stars(inst, config);
    SolveOutcome exact = oracle_solve(Problem::MWA, inst);
    REQUIRE(*out.value == *exact.value);
    SeatGraphAnalysis seats = analyze_seats(inst.seats);
    // replay trials: find the first one reproducing the winning value and
    // confirm the seat-color pinning on its placement
    bool verified = false;
    for (std::uint64_t t = 0; t < 100000 && !verified; ++t) {
        Coloring col = sample_k_coloring(3, seats.k, config.seed, t);
        bool matches = true;
        for (int i = 0; i < seats.k; ++i) {
            int agent = out.certificate->agent_at(seats.nonisolated[i]);
            if (col.color[agent] != i) matches = false;
        }
        if (matches) verified = true;
    }
    CHECK(verified);
}
