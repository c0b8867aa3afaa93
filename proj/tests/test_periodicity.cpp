#include <catch2/catch_amalgamated.hpp>
#include <random>

#include "fixtures.hpp"
#include "oracles.hpp"
#include "roadlag/harness.hpp"
#include "roadlag/periodicity.hpp"
#include "roadlag/transform.hpp"

using namespace roadlag;

TEST_CASE("period of basic graphs") {
    CHECK(period(fixtures::cycle(4)) == 4);
    CHECK(period(fixtures::loops(2)) == 1);
    CHECK(period(fixtures::parallel2()) == 2);
}

TEST_CASE("period preconditions") {
    CHECK_THROWS_AS(period(MultiGraph({"u", "v"}, {{"e", "u", "v"}})), PreconditionError);
    CHECK_THROWS_AS(period(MultiGraph({"u"}, {})), PreconditionError);
}

TEST_CASE("cyclic decomposition of basic graphs") {
    CyclicDecomposition d3 = cyclic_decomposition(fixtures::cycle(3));
    CHECK(d3.period == 3);
    CHECK(d3.class_of.at("a") == 0);
    CHECK(d3.class_of.at("b") == 1);
    CHECK(d3.class_of.at("c") == 2);

    CyclicDecomposition dp = cyclic_decomposition(fixtures::parallel2());
    CHECK(dp.period == 2);
    CHECK(dp.class_of.at("u") == 0);
    CHECK(dp.class_of.at("w") == 1);

    CyclicDecomposition dl = cyclic_decomposition(fixtures::loops(2));
    CHECK(dl.period == 1);
    CHECK(dl.class_of.at("v") == 0);
}

TEST_CASE("is_aperiodic") {
    CHECK(is_aperiodic(fixtures::loops(2)));
    CHECK_FALSE(is_aperiodic(fixtures::cycle(4)));
    // the split of three loops keeps a loop, hence gcd 1
    CHECK(is_aperiodic(full_lag(fixtures::loops(3)).lagged));
}

TEST_CASE("period equals the gcd of simple cycle lengths") {
    GraphFamilySpec spec;
    spec.max_vertices = 4;
    for (int d = 1; d <= 2; ++d) {
        spec.in_degree = d;
        enumerate_graphs(spec, [&](const MultiGraph& g, int, std::uint64_t) {
            CHECK(period(g) == oracle::gcd_of_simple_cycles(g));
        });
    }
    std::mt19937 rng(5150);
    int checked = 0;
    while (checked < 50) {
        MultiGraph g = fixtures::random_graph(rng, 1 + static_cast<int>(rng() % 5),
                                              1 + static_cast<int>(rng() % 9));
        if (!is_transitive(g) || g.edge_count() == 0) continue;
        CHECK(period(g) == oracle::gcd_of_simple_cycles(g));
        ++checked;
    }
}

TEST_CASE("every edge shifts classes by one") {
    std::mt19937 rng(161);
    int checked = 0;
    while (checked < 50) {
        MultiGraph g = fixtures::random_graph(rng, 1 + static_cast<int>(rng() % 5),
                                              1 + static_cast<int>(rng() % 9));
        if (!is_transitive(g)) continue;
        CyclicDecomposition dec = cyclic_decomposition(g);
        for (const Edge& e : g.edges())
            CHECK((dec.class_of.at(e.src) + 1) % dec.period == dec.class_of.at(e.rng));
        ++checked;
    }
}

TEST_CASE("path lengths are congruent to class differences") {
    std::mt19937 rng(424242);
    int checked = 0;
    while (checked < 40) {
        MultiGraph g = fixtures::random_graph(rng, 2 + static_cast<int>(rng() % 4),
                                              2 + static_cast<int>(rng() % 8));
        if (!is_transitive(g)) continue;
        CyclicDecomposition dec = cyclic_decomposition(g);
        for (int k = 0; k < 10; ++k) {
            Path p = fixtures::random_path(rng, g, static_cast<int>(rng() % 6));
            int from = dec.class_of.at(source(g, p));
            int to = dec.class_of.at(range(g, p));
            CHECK((from + p.length()) % dec.period == to);
        }
        ++checked;
    }
}
