#pragma once

#include <memory>
#include <random>
#include <string>
#include <unordered_map>
#include <vector>

#include "roadlag/coloring.hpp"
#include "roadlag/graph.hpp"

namespace fixtures {

using roadlag::Edge;
using roadlag::MultiGraph;

inline std::shared_ptr<const MultiGraph> share(MultiGraph g) {
    return std::make_shared<const MultiGraph>(std::move(g));
}

/// Single vertex "v" with loops e0..e{d-1}.
inline MultiGraph loops(int d) {
    std::vector<Edge> es;
    for (int i = 0; i < d; ++i) es.push_back({"e" + std::to_string(i), "v", "v"});
    return MultiGraph({"v"}, std::move(es));
}

/// n-cycle a -> b -> c -> ... -> a (names a, b, c, ... for n <= 26).
inline MultiGraph cycle(int n) {
    std::vector<std::string> vs;
    for (int i = 0; i < n; ++i) vs.push_back(std::string(1, static_cast<char>('a' + i)));
    std::vector<Edge> es;
    for (int i = 0; i < n; ++i) {
        std::string from = vs[static_cast<std::size_t>(i)];
        std::string to = vs[static_cast<std::size_t>((i + 1) % n)];
        es.push_back({from + to, from, to});
    }
    return MultiGraph(std::move(vs), std::move(es));
}

/// Two vertices u, v with a loop at each and edges both ways:
/// x: u->u, y: u->v, z: v->u, w: v->v.
inline MultiGraph two_loop_graph() {
    return MultiGraph({"u", "v"},
                      {{"x", "u", "u"}, {"y", "u", "v"}, {"z", "v", "u"}, {"w", "v", "v"}});
}

/// Two vertices u, w joined by parallel edge pairs in both directions.
inline MultiGraph parallel2() {
    return MultiGraph({"u", "w"},
                      {{"y1", "u", "w"}, {"y2", "u", "w"}, {"z1", "w", "u"}, {"z2", "w", "u"}});
}

/// Chain u -> v -> w -> u with an extra loop at u; v and w have in-degree 1.
inline MultiGraph chain_loop() {
    return MultiGraph({"u", "v", "w"},
                      {{"L", "u", "u"}, {"a", "u", "v"}, {"b", "v", "w"}, {"c", "w", "u"}});
}

/// Loops x, y at u plus u -> v -> u.
inline MultiGraph loops_and_spur() {
    return MultiGraph({"u", "v"},
                      {{"x", "u", "u"}, {"y", "u", "u"}, {"e", "u", "v"}, {"z", "v", "u"}});
}

inline roadlag::StrongColoring color(std::shared_ptr<const MultiGraph> g,
                                     const std::unordered_map<std::string, int>& m) {
    return roadlag::StrongColoring::create(std::move(g), m);
}

/// Random multigraph: n vertices, m edges with uniform endpoints.
inline MultiGraph random_graph(std::mt19937& rng, int n, int m) {
    std::vector<std::string> vs;
    for (int i = 0; i < n; ++i) vs.push_back("v" + std::to_string(i));
    std::uniform_int_distribution<int> pick(0, n - 1);
    std::vector<Edge> es;
    for (int i = 0; i < m; ++i)
        es.push_back({"e" + std::to_string(i), vs[static_cast<std::size_t>(pick(rng))],
                      vs[static_cast<std::size_t>(pick(rng))]});
    return MultiGraph(std::move(vs), std::move(es));
}

/// Random walk of the given length starting anywhere, returned in operator
/// order (walk order reversed); nullopt-like empty path never returned, the
/// caller picks length >= 1.  Falls back to a shorter walk when stuck.
inline roadlag::Path random_path(std::mt19937& rng, const MultiGraph& g, int length) {
    std::uniform_int_distribution<int> pick_v(0, g.vertex_count() - 1);
    int cur = pick_v(rng);
    std::vector<std::string> walk;
    for (int i = 0; i < length; ++i) {
        const auto& outs = g.out_edges(cur);
        if (outs.empty()) break;
        std::uniform_int_distribution<std::size_t> pick_e(0, outs.size() - 1);
        int e = outs[pick_e(rng)];
        walk.push_back(g.edge(e).id);
        cur = g.edge_rng(e);
    }
    if (walk.empty()) return roadlag::Path::at_vertex(g.vertex_id(cur));
    std::reverse(walk.begin(), walk.end());
    return roadlag::Path::of_edges(std::move(walk));
}

}  // namespace fixtures
