#include <catch2/catch_amalgamated.hpp>
#include <set>

#include "fixtures.hpp"
#include "oracles.hpp"
#include "roadlag/harness.hpp"
#include "roadlag/json_io.hpp"

using namespace roadlag;

TEST_CASE("assignment space sizes") {
    CHECK(GraphFamily(1, 2).assignment_count() == 1);
    CHECK(GraphFamily(2, 1).assignment_count() == 4);
    CHECK(GraphFamily(2, 2).assignment_count() == 9);
    CHECK(GraphFamily(3, 2).assignment_count() == 216);
}

TEST_CASE("enumerated graphs are in-degree regular and deterministic") {
    GraphFamilySpec spec;
    spec.max_vertices = 3;
    spec.in_degree = 2;
    std::vector<std::string> first_dump;
    enumerate_graphs(spec, [&](const MultiGraph& g, int n, std::uint64_t) {
        CHECK(g.vertex_count() <= 3);
        CHECK(g.vertex_count() == n);
        CHECK(is_transitive(g));
        for (const auto& v : g.vertex_ids()) CHECK(in_degree(g, v) == 2);
        first_dump.push_back(graph_to_json(g).dump());
    });
    std::vector<std::string> second_dump;
    enumerate_graphs(spec, [&](const MultiGraph& g, int, std::uint64_t) {
        second_dump.push_back(graph_to_json(g).dump());
    });
    CHECK(first_dump == second_dump);
}

TEST_CASE("enumeration counts match the adjacency-matrix oracle") {
    for (int n = 1; n <= 3; ++n) {
        for (int d = 1; d <= 2; ++d) {
            std::size_t mine = 0;
            GraphFamilySpec spec;
            spec.max_vertices = n;
            spec.in_degree = d;
            enumerate_graphs(spec, [&](const MultiGraph& g, int graph_n, std::uint64_t) {
                if (graph_n == n) ++mine;
                (void)g;
            });
            CHECK(mine == oracle::regular_graphs_by_matrix(n, d, true).size());
        }
    }
}

TEST_CASE("small layer counts") {
    // n=1, d=2: the two-loop vertex is the only assignment
    GraphFamilySpec spec;
    spec.max_vertices = 1;
    spec.in_degree = 2;
    CHECK(enumerate_graphs_vec(spec).size() == 1);

    // n=2, d=1: of the four source assignments only the 2-cycle is transitive
    spec.max_vertices = 2;
    spec.in_degree = 1;
    std::size_t two_layer = 0;
    enumerate_graphs(spec, [&](const MultiGraph&, int n, std::uint64_t) {
        if (n == 2) ++two_layer;
    });
    CHECK(two_layer == 1);

    // n=2, d=2: of the nine assignments exactly those with an edge in each
    // direction are transitive
    spec.in_degree = 2;
    std::size_t strong = 0;
    enumerate_graphs(spec, [&](const MultiGraph&, int n, std::uint64_t) {
        if (n == 2) ++strong;
    });
    CHECK(strong == 4);
    CHECK(strong == oracle::regular_graphs_by_matrix(2, 2, true).size());
}

TEST_CASE("dedup collapses isomorphic assignments") {
    GraphFamilySpec spec;
    spec.max_vertices = 2;
    spec.in_degree = 2;
    CHECK(enumerate_graphs_vec(spec).size() == 5);
    spec.dedup = true;
    CHECK(enumerate_graphs_vec(spec).size() == 4);
}

TEST_CASE("canonical_form is a relabeling invariant") {
    MultiGraph g = fixtures::two_loop_graph();
    // same multigraph with vertices listed the other way round and renamed
    MultiGraph h({"B", "A"},
                 {{"e1", "B", "B"}, {"e2", "B", "A"}, {"e3", "A", "B"}, {"e4", "A", "A"}});
    CHECK(canonical_form(g) == canonical_form(h));
    CHECK(canonical_form(g) != canonical_form(fixtures::parallel2()));
}

TEST_CASE("enumerate_graphs enforces its caps") {
    GraphFamilySpec spec;
    spec.max_vertices = 6;
    CHECK_THROWS_AS(enumerate_graphs_vec(spec), BudgetError);
    spec.max_vertices = 2;
    spec.in_degree = 4;
    CHECK_THROWS_AS(enumerate_graphs_vec(spec), BudgetError);
}

TEST_CASE("verify_road_coloring on reference graphs") {
    RoadColoringReport rp = verify_road_coloring(fixtures::parallel2());
    CHECK(rp.period == 2);
    CHECK(rp.coloring_count == 4);
    CHECK(rp.ranks == std::vector<int>{2, 2, 2, 2});
    CHECK(rp.witness_index == 0);
    CHECK(rp.pass);

    RoadColoringReport rt = verify_road_coloring(fixtures::two_loop_graph());
    CHECK(rt.period == 1);
    CHECK(rt.ranks == std::vector<int>{1, 2, 2, 1});
    CHECK(rt.witness_index == 0);
    CHECK(rt.pass);

    RoadColoringReport rc = verify_road_coloring(fixtures::cycle(3));
    CHECK(rc.period == 3);
    CHECK(rc.coloring_count == 1);
    CHECK(rc.ranks == std::vector<int>{3});
    CHECK(rc.pass);
}

TEST_CASE("road coloring holds across the small family") {
    GraphFamilySpec spec;
    spec.max_vertices = 3;
    spec.in_degree = 2;
    enumerate_graphs(spec, [&](const MultiGraph& g, int, std::uint64_t) {
        RoadColoringReport r = verify_road_coloring(g);
        CHECK(r.exists_rank_p);
        CHECK(r.all_rank_ge_p);
    });
}

TEST_CASE("verify_road_coloring respects budgets and worker counts") {
    SearchBudget tiny;
    tiny.coloring_cap = 2;
    CHECK_THROWS_AS(verify_road_coloring(fixtures::parallel2(), tiny), BudgetError);

    RoadColoringReport seq = verify_road_coloring(fixtures::two_loop_graph(), {}, 1);
    RoadColoringReport par = verify_road_coloring(fixtures::two_loop_graph(), {}, 8);
    CHECK(seq.ranks == par.ranks);
    CHECK(seq.witness_index == par.witness_index);
}

TEST_CASE("full_pipeline on the loop bouquet") {
    PipelineReport r = full_pipeline(fixtures::loops(3));
    CHECK(r.pass);
    CHECK(r.contractions.empty());
    CHECK(r.normalized == fixtures::loops(3));
    CHECK(r.lag.lagged.vertex_count() == 2);
    CHECK(r.lag_period == 1);
    std::multiset<std::size_t> lengths;
    for (const Edge& e : r.normalized.edges())
        lengths.insert(r.labeling->label_of(e.id).size());
    CHECK(lengths == std::multiset<std::size_t>{1, 2, 2});
    REQUIRE(r.prefix_report.vertices.size() == 1);
    CHECK(r.prefix_report.vertices[0].check.kraft_num == 1);
    CHECK(r.prefix_report.vertices[0].check.kraft_den == 1);
}

TEST_CASE("full_pipeline contracts spurs first") {
    PipelineReport r = full_pipeline(fixtures::loops_and_spur());
    CHECK(r.pass);
    CHECK(r.contractions.size() == 1);
    CHECK(r.normalized.vertex_count() == 1);
    CHECK(r.normalized.edge_count() == 3);
    CHECK(r.lag.lagged.vertex_count() == 2);
}

TEST_CASE("full_pipeline rejects cycle graphs") {
    CHECK_THROWS_WITH(full_pipeline(fixtures::cycle(4)),
                      Catch::Matchers::ContainsSubstring("cycle graph"));
}

TEST_CASE("full_pipeline succeeds on every eligible small graph") {
    GraphFamilySpec spec;
    spec.max_vertices = 3;
    spec.in_degree = 2;
    enumerate_graphs(spec, [&](const MultiGraph& g, int, std::uint64_t) {
        if (is_cycle_graph(g)) return;
        PipelineReport r = full_pipeline(g);
        CHECK(r.pass);
    });
}
