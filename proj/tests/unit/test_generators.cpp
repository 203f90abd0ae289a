#include <catch2/catch_amalgamated.hpp>

#include "seatarr/generators.hpp"
#include "seatarr/oracle.hpp"

#include "naive.hpp"

using namespace seatarr;
using seatarr::testing::has_hamiltonian_path;
using seatarr::testing::max_clique_size;
using seatarr::testing::max_independent_set_size;

TEST_CASE("figure-one generator") {
    GeneratedInstance g = gen_figure1();
    CHECK(g.agent_names == std::vector<std::string>{"p1", "p2", "p3", "p4"});
    CHECK(*oracle_solve(Problem::MWA, g.instance).value == Rational(4));
    CHECK(*oracle_solve(Problem::MUA, g.instance).value == Rational(0));
    CHECK(analyze_preferences(g.instance.profile).delta_plus == 1);
}

TEST_CASE("random generator determinism and class conformance") {
    GeneratorSpec spec;
    spec.n = 6;
    spec.seat_class = SeatClass::Path;
    spec.k = 4;
    spec.pref_class = PrefClass::Binary;
    spec.seed = 1;
    GeneratedInstance a = gen_random(spec);
    GeneratedInstance b = gen_random(spec);
    CHECK(a.instance == b.instance);

    SECTION("symmetric request yields symmetric preferences") {
        GeneratorSpec s = spec;
        s.pref_class = PrefClass::Symmetric;
        for (std::uint64_t seed = 1; seed < 30; ++seed) {
            s.seed = seed;
            CHECK(analyze_preferences(gen_random(s).instance.profile).symmetric);
        }
    }
    SECTION("delta cap is respected") {
        GeneratorSpec s = spec;
        s.pref_class = PrefClass::General;
        s.delta_cap = 2;
        for (std::uint64_t seed = 1; seed < 30; ++seed) {
            s.seed = seed;
            CHECK(analyze_preferences(gen_random(s).instance.profile).delta_plus <= 2);
        }
    }
    SECTION("seat classes come out as requested") {
        for (SeatClass cls : {SeatClass::Clique, SeatClass::Stars, SeatClass::Path,
                              SeatClass::Cycle, SeatClass::Matching, SeatClass::General}) {
            GeneratorSpec s = spec;
            s.seat_class = cls;
            s.k = cls == SeatClass::Cycle ? 3 : 4;
            for (std::uint64_t seed = 1; seed < 10; ++seed) {
                s.seed = seed;
                SeatGraphAnalysis analysis = analyze_seats(gen_random(s).instance.seats);
                CHECK(analysis.k == s.k);
                if (cls != SeatClass::General) CHECK(analysis.has(cls));
            }
        }
    }
    SECTION("binary and strict flags") {
        GeneratorSpec s = spec;
        s.pref_class = PrefClass::Binary;
        CHECK(analyze_preferences(gen_random(s).instance.profile).binary);
        s.pref_class = PrefClass::Strict;
        s.weight_range = 10;
        CHECK(analyze_preferences(gen_random(s).instance.profile).strict);
    }
    SECTION("unconstructible specs are rejected") {
        GeneratorSpec bad = spec;
        bad.seat_class = SeatClass::Cycle;
        bad.k = 2;
        CHECK_THROWS_AS(gen_random(bad), std::invalid_argument);
        bad.seat_class = SeatClass::Matching;
        bad.k = 3;
        CHECK_THROWS_AS(gen_random(bad), std::invalid_argument);
        bad.seat_class = SeatClass::Path;
        bad.k = 9;  // k > n
        CHECK_THROWS_AS(gen_random(bad), std::invalid_argument);
        GeneratorSpec strict_small = spec;
        strict_small.pref_class = PrefClass::Strict;
        strict_small.weight_range = 1;
        CHECK_THROWS_AS(gen_random(strict_small), std::invalid_argument);
    }
}

TEST_CASE("clique reduction plants the welfare threshold") {
    SECTION("K5 with h = 4 reaches 12") {
        std::vector<std::pair<int, int>> edges;
        for (int i = 0; i < 5; ++i)
            for (int j = i + 1; j < 5; ++j) edges.emplace_back(i, j);
        GeneratedInstance g = gen_clique_to_mwa(SeatGraph(5, edges), 4);
        CHECK(*g.planted_threshold == Rational(12));
        CHECK(*oracle_solve(Problem::MWA, g.instance).value >= Rational(12));
    }
    SECTION("triangle-free graph cannot reach the h = 3 threshold") {
        // the 4-cycle is triangle-free
        SeatGraph c4(4, {{0, 1}, {1, 2}, {2, 3}, {0, 3}});
        GeneratedInstance g = gen_clique_to_mwa(c4, 3);
        CHECK(*oracle_solve(Problem::MWA, g.instance).value < Rational(6));
    }
    SECTION("h = 1 gives the always-met threshold 0") {
        GeneratedInstance g = gen_clique_to_mwa(SeatGraph(3, {{0, 1}}), 1);
        CHECK(*g.planted_threshold == Rational(0));
        CHECK(*oracle_solve(Problem::MWA, g.instance).value >= Rational(0));
    }
}

TEST_CASE("independent-set reduction plants exchange stability") {
    SECTION("edgeless graph on four vertices with h = 3") {
        GeneratedInstance g = gen_is_to_esa(SeatGraph(4), 3);
        CHECK(*oracle_solve(Problem::ESA, g.instance).exists);
    }
    SECTION("K4 has no independent set of size 2") {
        std::vector<std::pair<int, int>> edges;
        for (int i = 0; i < 4; ++i)
            for (int j = i + 1; j < 4; ++j) edges.emplace_back(i, j);
        GeneratedInstance g = gen_is_to_esa(SeatGraph(4, edges), 2);
        CHECK_FALSE(*oracle_solve(Problem::ESA, g.instance).exists);
    }
    SECTION("h = 1 verdict matches the brute force") {
        SeatGraph source(3, {{0, 1}});
        GeneratedInstance g = gen_is_to_esa(source, 1);
        bool expected = max_independent_set_size(source) >= 1;
        CHECK(*oracle_solve(Problem::ESA, g.instance).exists == expected);
    }
}

TEST_CASE("hamiltonian reduction plants the path welfare") {
    SECTION("P4 reaches its threshold") {
        SeatGraph p4(4, {{0, 1}, {1, 2}, {2, 3}});
        GeneratedInstance g = gen_ham_to_mwa(p4);
        CHECK(*g.planted_threshold == Rational(6));
        CHECK(*oracle_solve(Problem::MWA, g.instance).value == Rational(6));
    }
    SECTION("the claw has no hamiltonian path") {
        SeatGraph claw(4, {{0, 1}, {0, 2}, {0, 3}});
        GeneratedInstance g = gen_ham_to_mwa(claw);
        CHECK(*oracle_solve(Problem::MWA, g.instance).value < Rational(6));
    }
    SECTION("single vertex") {
        GeneratedInstance g = gen_ham_to_mwa(SeatGraph(1));
        CHECK(*g.planted_threshold == Rational(0));
        CHECK(*oracle_solve(Problem::MWA, g.instance).value == Rational(0));
    }
}

TEST_CASE("reduction verdicts agree with direct graph brute force") {
    // small seeded corpus; the acceptance suite runs the full one
    for (std::uint64_t seed = 0; seed < 12; ++seed) {
        int n = 4 + static_cast<int>(seed % 2);
        SplitMix rng(splitmix64(seed + 77));
        std::vector<std::pair<int, int>> edges;
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j)
                if (rng.next_below(2) == 0) edges.emplace_back(i, j);
        SeatGraph source(n, edges);

        int h = 2 + static_cast<int>(seed % 2);
        GeneratedInstance clique_inst = gen_clique_to_mwa(source, h);
        bool has_clique = max_clique_size(source) >= h;
        CHECK((*oracle_solve(Problem::MWA, clique_inst.instance).value >=
               *clique_inst.planted_threshold) == has_clique);

        GeneratedInstance is_inst = gen_is_to_esa(source, h);
        bool has_is = max_independent_set_size(source) >= h;
        CHECK(*oracle_solve(Problem::ESA, is_inst.instance).exists == has_is);

        GeneratedInstance ham_inst = gen_ham_to_mwa(source);
        CHECK((*oracle_solve(Problem::MWA, ham_inst.instance).value >=
               *ham_inst.planted_threshold) == has_hamiltonian_path(source));
    }
}
