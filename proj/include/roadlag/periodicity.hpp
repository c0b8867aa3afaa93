// periodicity.hpp -- period and cyclic decomposition of transitive graphs.
//
// The period p of a transitive graph is the gcd of its cycle lengths,
// equivalently the largest p admitting a partition V = V_0 u ... u V_{p-1}
// where every edge steps from V_i to V_{i+1 mod p}.

#pragma once

#include <numeric>
#include <queue>
#include <string>
#include <unordered_map>
#include <vector>

#include "roadlag/errors.hpp"
#include "roadlag/graph.hpp"

namespace roadlag {

struct CyclicDecomposition {
    int period = 1;
    /// class index in {0, ..., period-1} per vertex; class_of[root] = 0 for
    /// the first vertex in document order.
    std::unordered_map<std::string, int> class_of;
};

namespace detail {

inline void require_periodic_input(const MultiGraph& g, const char* op) {
    if (!is_transitive(g))
        throw PreconditionError(std::string(op) + ": graph is not transitive");
    if (g.edge_count() == 0)
        throw PreconditionError(std::string(op) + ": graph has no edges");
}

/// BFS levels from vertex 0 following edges forward.  Transitivity makes
/// every vertex reachable.
inline std::vector<int> bfs_levels(const MultiGraph& g) {
    std::vector<int> level(static_cast<std::size_t>(g.vertex_count()), -1);
    std::queue<int> q;
    level[0] = 0;
    q.push(0);
    while (!q.empty()) {
        int v = q.front();
        q.pop();
        for (int e : g.out_edges(v)) {
            int w = g.edge_rng(e);
            if (level[static_cast<std::size_t>(w)] < 0) {
                level[static_cast<std::size_t>(w)] = level[static_cast<std::size_t>(v)] + 1;
                q.push(w);
            }
        }
    }
    return level;
}

}  // namespace detail

/// gcd of all cycle lengths, computed from BFS level defects: for each edge,
/// level(src) + 1 - level(rng) is a multiple of the period, and their gcd
/// attains it.
inline int period(const MultiGraph& g) {
    detail::require_periodic_input(g, "period");
    auto level = detail::bfs_levels(g);
    int acc = 0;
    for (int e = 0; e < g.edge_count(); ++e) {
        int defect = level[static_cast<std::size_t>(g.edge_src(e))] + 1 -
                     level[static_cast<std::size_t>(g.edge_rng(e))];
        acc = std::gcd(acc, defect);  // BFS levels make defects >= 0
    }
    contract_check(acc > 0, "period: no nonzero level defect in a transitive graph with edges");
    return acc;
}

inline CyclicDecomposition cyclic_decomposition(const MultiGraph& g) {
    detail::require_periodic_input(g, "cyclic_decomposition");
    int p = period(g);
    auto level = detail::bfs_levels(g);
    CyclicDecomposition dec;
    dec.period = p;
    std::vector<int> class_count(static_cast<std::size_t>(p), 0);
    for (int v = 0; v < g.vertex_count(); ++v) {
        int c = level[static_cast<std::size_t>(v)] % p;
        dec.class_of.emplace(g.vertex_id(v), c);
        ++class_count[static_cast<std::size_t>(c)];
    }
    for (int e = 0; e < g.edge_count(); ++e) {
        int cs = dec.class_of.at(g.edge(e).src);
        int cr = dec.class_of.at(g.edge(e).rng);
        contract_check((cs + 1) % p == cr,
                       "cyclic_decomposition: edge '" + g.edge(e).id +
                           "' violates the class-shift rule");
    }
    for (int c = 0; c < p; ++c)
        contract_check(class_count[static_cast<std::size_t>(c)] > 0,
                       "cyclic_decomposition: empty cyclic class");
    return dec;
}

inline bool is_aperiodic(const MultiGraph& g) { return period(g) == 1; }

}  // namespace roadlag
