// transform.hpp -- graph rewriting: edge contraction, the vertex lag, and the
// path lift theta between a graph and its lagged form.

#pragma once

#include <algorithm>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "roadlag/errors.hpp"
#include "roadlag/graph.hpp"

namespace roadlag {

struct RedirectedEdge {
    std::string id;
    std::string src;
    std::string rng;
};

struct ContractionStep {
    std::string removed_vertex;  // r(e0), had in-degree exactly 1
    std::string removed_edge;    // e0
    std::vector<RedirectedEdge> redirected;  // surviving edges whose endpoints moved
};

namespace detail {

inline int count_in_degree(const MultiGraph& g, int lo, int hi) {
    // vertices with lo <= in_degree < hi (hi < 0 means unbounded)
    int n = 0;
    for (int v = 0; v < g.vertex_count(); ++v) {
        int d = static_cast<int>(g.in_edges(v).size());
        if (d >= lo && (hi < 0 || d < hi)) ++n;
    }
    return n;
}

}  // namespace detail

/// Contract the edge e0, whose range must have in-degree exactly 1: r(e0) is
/// removed and every surviving edge incident to it is reattached to s(e0).
/// The result keeps one fewer in-degree-1 vertex, stays transitive and stays
/// a non-cycle; all three are checked.
inline std::pair<MultiGraph, ContractionStep> contract_edge(const MultiGraph& g,
                                                            const std::string& e0_id) {
    if (!is_transitive(g)) throw PreconditionError("contract_edge: graph is not transitive");
    if (is_cycle_graph(g)) throw PreconditionError("contract_edge: graph is a cycle graph");
    int e0 = g.edge_index(e0_id);
    int v0 = g.edge_rng(e0);
    if (g.in_edges(v0).size() != 1)
        throw PreconditionError("contract_edge: range of '" + e0_id +
                                "' has in-degree " + std::to_string(g.in_edges(v0).size()) +
                                ", expected 1");
    // A loop here would force the whole graph to be a one-vertex cycle,
    // excluded above.
    contract_check(g.edge_src(e0) != v0, "contract_edge: in-degree-1 loop in a non-cycle graph");

    const std::string removed_vertex = g.vertex_id(v0);
    const std::string target = g.edge(e0).src;

    std::vector<std::string> vertices;
    vertices.reserve(static_cast<std::size_t>(g.vertex_count() - 1));
    for (int v = 0; v < g.vertex_count(); ++v)
        if (v != v0) vertices.push_back(g.vertex_id(v));

    ContractionStep step;
    step.removed_vertex = removed_vertex;
    step.removed_edge = e0_id;

    std::vector<Edge> edges;
    edges.reserve(static_cast<std::size_t>(g.edge_count() - 1));
    for (int e = 0; e < g.edge_count(); ++e) {
        if (e == e0) continue;
        Edge ed = g.edge(e);
        bool moved = false;
        if (ed.src == removed_vertex) { ed.src = target; moved = true; }
        if (ed.rng == removed_vertex) { ed.rng = target; moved = true; }
        if (moved) step.redirected.push_back({ed.id, ed.src, ed.rng});
        edges.push_back(std::move(ed));
    }

    MultiGraph out(std::move(vertices), std::move(edges));

    contract_check(is_transitive(out), "contract_edge: result lost transitivity");
    contract_check(!is_cycle_graph(out), "contract_edge: result became a cycle graph");
    contract_check(detail::count_in_degree(out, 1, 2) == detail::count_in_degree(g, 1, 2) - 1,
                   "contract_edge: in-degree-1 vertex count did not drop by exactly 1");
    for (int v = 0; v < out.vertex_count(); ++v)
        contract_check(out.in_edges(v).size() ==
                           g.in_edges(g.vertex_index(out.vertex_id(v))).size(),
                       "contract_edge: in-degree of surviving vertex '" + out.vertex_id(v) +
                           "' changed");
    return {std::move(out), std::move(step)};
}

/// Repeatedly contract the lexicographically-first (by edge id) edge whose
/// range has in-degree 1, until every in-degree is at least 2.
inline std::pair<MultiGraph, std::vector<ContractionStep>> normalize_indegree2(
    const MultiGraph& g) {
    if (!is_transitive(g))
        throw PreconditionError("normalize_indegree2: graph is not transitive");
    if (is_cycle_graph(g))
        throw PreconditionError("normalize_indegree2: graph is a cycle graph");
    MultiGraph cur = g;
    std::vector<ContractionStep> steps;
    for (;;) {
        const std::string* pick = nullptr;
        for (int v = 0; v < cur.vertex_count(); ++v) {
            if (cur.in_edges(v).size() != 1) continue;
            const std::string& id = cur.edge(cur.in_edges(v)[0]).id;
            if (pick == nullptr || id < *pick) pick = &id;
        }
        if (pick == nullptr) break;
        auto [next, step] = contract_edge(cur, *pick);
        steps.push_back(std::move(step));
        cur = std::move(next);
    }
    return {std::move(cur), std::move(steps)};
}

/// Result of a single vertex lag.
struct LagStep {
    MultiGraph lagged;
    std::string vertex;                        // the lagged vertex v
    std::vector<std::string> added_vertices;   // v#1, ..., v#(d-2)
    std::vector<std::string> ordering_used;    // in-edge sources u_0, ..., u_{d-1}
    std::unordered_map<std::string, Path> theta_fragment;  // in-edge of v -> path in lagged
};

/// Expand a vertex v of in-degree d >= 3 into a chain of d-2 auxiliary
/// vertices so that v and every auxiliary vertex have in-degree exactly 2.
/// In-edges of v are taken in document order as (e_0, ..., e_{d-1}); e_0 is
/// rerouted to v, e_j to the auxiliary v_j for 1 <= j <= d-2, and e_{d-1} to
/// v_{d-2}; chain edges f_k run v_k -> v_{k-1} with f_1 landing on v.
/// The lift of e_j is f_1...f_j e_j^ (its endpoint forces the last in-edge
/// to reuse the full chain: there is no f_{d-1}).
inline LagStep lag_at_vertex(const MultiGraph& g, const std::string& v_id) {
    int v = g.vertex_index(v_id);
    int d = static_cast<int>(g.in_edges(v).size());
    if (d < 3)
        throw PreconditionError("lag_at_vertex: '" + v_id + "' has in-degree " +
                                std::to_string(d) + ", expected >= 3");
    for (int w = 0; w < g.vertex_count(); ++w)
        if (g.in_edges(w).size() < 2)
            throw PreconditionError("lag_at_vertex: vertex '" + g.vertex_id(w) +
                                    "' has in-degree < 2");
    if (!is_transitive(g)) throw PreconditionError("lag_at_vertex: graph is not transitive");

    LagStep step;
    step.vertex = v_id;

    auto chain_vertex = [&](int k) { return v_id + "#" + std::to_string(k); };
    auto chain_edge = [&](int k) { return v_id + "#f" + std::to_string(k); };
    auto hat_edge = [&](const std::string& id) { return id + "#hat"; };

    std::vector<std::string> vertices = g.vertex_ids();
    for (int k = 1; k <= d - 2; ++k) {
        std::string nv = chain_vertex(k);
        if (g.has_vertex(nv))
            throw SchemaError("lag_at_vertex: generated vertex id '" + nv +
                              "' collides with an existing vertex");
        vertices.push_back(nv);
        step.added_vertices.push_back(std::move(nv));
    }

    // position of each in-edge of v within (e_0, ..., e_{d-1})
    std::unordered_map<int, int> slot;
    for (int j = 0; j < d; ++j) {
        int e = g.in_edges(v)[static_cast<std::size_t>(j)];
        slot.emplace(e, j);
        step.ordering_used.push_back(g.edge(e).src);
    }

    std::vector<Edge> edges;
    edges.reserve(static_cast<std::size_t>(g.edge_count() + d - 2));
    for (int e = 0; e < g.edge_count(); ++e) {
        const Edge& ed = g.edge(e);
        auto it = slot.find(e);
        if (it == slot.end()) {
            edges.push_back(ed);
            continue;
        }
        int j = it->second;
        std::string hid = hat_edge(ed.id);
        if (g.has_edge(hid))
            throw SchemaError("lag_at_vertex: generated edge id '" + hid +
                              "' collides with an existing edge");
        std::string target = (j == 0) ? v_id : chain_vertex(std::min(j, d - 2));
        edges.push_back({hid, ed.src, target});

        std::vector<std::string> lift;
        for (int k = 1; k <= std::min(j, d - 2); ++k) lift.push_back(chain_edge(k));
        lift.push_back(hid);
        step.theta_fragment.emplace(ed.id, Path::of_edges(std::move(lift)));
    }
    for (int k = 1; k <= d - 2; ++k) {
        std::string fid = chain_edge(k);
        if (g.has_edge(fid))
            throw SchemaError("lag_at_vertex: generated edge id '" + fid +
                              "' collides with an existing edge");
        edges.push_back({fid, chain_vertex(k), k == 1 ? v_id : chain_vertex(k - 1)});
    }

    step.lagged = MultiGraph(std::move(vertices), std::move(edges));

    const MultiGraph& out = step.lagged;
    contract_check(is_transitive(out), "lag_at_vertex: result lost transitivity");
    contract_check(out.in_edges(out.vertex_index(v_id)).size() == 2,
                   "lag_at_vertex: lagged vertex in-degree != 2");
    for (const auto& nv : step.added_vertices)
        contract_check(out.in_edges(out.vertex_index(nv)).size() == 2,
                       "lag_at_vertex: auxiliary vertex in-degree != 2");
    for (int w = 0; w < g.vertex_count(); ++w)
        if (w != v)
            contract_check(out.in_edges(out.vertex_index(g.vertex_id(w))).size() ==
                               g.in_edges(w).size(),
                           "lag_at_vertex: in-degree of untouched vertex changed");
    contract_check(detail::count_in_degree(out, 3, -1) == detail::count_in_degree(g, 3, -1) - 1,
                   "lag_at_vertex: in-degree->=3 vertex count did not drop by exactly 1");
    return step;
}

/// The full lag and the edge-to-path lift theta.
struct LagResult {
    MultiGraph original;
    MultiGraph lagged;
    std::unordered_map<std::string, Path> theta_edge;  // original edge -> path in lagged
    /// per lagged vertex (document order): the auxiliary vertices added
    std::vector<std::pair<std::string, std::vector<std::string>>> added_vertices;
    /// per lagged vertex (document order): in-edge sources (u_0, ..., u_{d-1})
    std::vector<std::pair<std::string, std::vector<std::string>>> ordering_used;
    /// innermost edge of theta(e) -> e; drives theta_inverse
    std::unordered_map<std::string, std::string> inverse_last;
};

/// Lag every vertex of in-degree >= 3 (document order; the constructions at
/// distinct vertices touch disjoint edge sets, so the order only affects id
/// bookkeeping, not the result up to isomorphism).  The output graph is
/// in-degree 2-regular.
inline LagResult full_lag(const MultiGraph& g) {
    if (!is_transitive(g)) throw PreconditionError("full_lag: graph is not transitive");
    for (int v = 0; v < g.vertex_count(); ++v)
        if (g.in_edges(v).size() < 2)
            throw PreconditionError("full_lag: vertex '" + g.vertex_id(v) +
                                    "' has in-degree < 2");

    LagResult lr;
    lr.original = g;
    MultiGraph cur = g;
    for (int v = 0; v < g.vertex_count(); ++v) {
        if (g.in_edges(v).size() < 3) continue;
        LagStep step = lag_at_vertex(cur, g.vertex_id(v));
        for (auto& [eid, path] : step.theta_fragment) lr.theta_edge.emplace(eid, std::move(path));
        lr.added_vertices.emplace_back(step.vertex, std::move(step.added_vertices));
        lr.ordering_used.emplace_back(step.vertex, std::move(step.ordering_used));
        cur = std::move(step.lagged);
    }
    for (int e = 0; e < g.edge_count(); ++e) {
        const std::string& id = g.edge(e).id;
        if (!lr.theta_edge.count(id))
            lr.theta_edge.emplace(id, Path::of_edges({id}));
    }
    lr.lagged = std::move(cur);

    for (int v = 0; v < lr.lagged.vertex_count(); ++v)
        contract_check(lr.lagged.in_edges(v).size() == 2,
                       "full_lag: vertex '" + lr.lagged.vertex_id(v) + "' not in-degree 2");
    for (const auto& [eid, path] : lr.theta_edge) {
        validate_path(lr.lagged, path);
        auto [it, fresh] = lr.inverse_last.emplace(path.edge_ids().back(), eid);
        (void)it;
        contract_check(fresh, "full_lag: two lifts share an innermost edge");
    }
    return lr;
}

/// theta on paths: concatenation of the per-edge lifts; on length-0 paths it
/// is the embedding of the original vertex set.
inline Path theta_path(const LagResult& lr, const Path& p) {
    validate_path(lr.original, p);
    if (p.is_vertex()) return p;
    std::vector<std::string> ids;
    for (const auto& eid : p.edge_ids()) {
        const Path& t = lr.theta_edge.at(eid);
        ids.insert(ids.end(), t.edge_ids().begin(), t.edge_ids().end());
    }
    return Path::of_edges(std::move(ids));
}

/// Inverse of theta_path, defined exactly on lagged paths whose range and
/// source lie in the original vertex set.
inline Path theta_inverse(const LagResult& lr, const Path& q) {
    validate_path(lr.lagged, q);
    if (q.is_vertex()) {
        if (!lr.original.has_vertex(q.vertex_id()))
            throw PreconditionError("theta_inverse: vertex '" + q.vertex_id() +
                                    "' is not an original vertex");
        return q;
    }
    if (!lr.original.has_vertex(range(lr.lagged, q)))
        throw PreconditionError("theta_inverse: range '" + range(lr.lagged, q) +
                                "' is not an original vertex");
    if (!lr.original.has_vertex(source(lr.lagged, q)))
        throw PreconditionError("theta_inverse: source '" + source(lr.lagged, q) +
                                "' is not an original vertex");

    // Peel lift blocks off the source end; each block is keyed by its
    // innermost edge.
    const auto& ids = q.edge_ids();
    std::vector<std::string> reversed;
    std::size_t end = ids.size();
    while (end > 0) {
        auto it = lr.inverse_last.find(ids[end - 1]);
        contract_check(it != lr.inverse_last.end(),
                       "theta_inverse: edge '" + ids[end - 1] + "' ends no lift block");
        const Path& block = lr.theta_edge.at(it->second);
        std::size_t len = block.edge_ids().size();
        contract_check(len <= end, "theta_inverse: truncated lift block at '" + ids[end - 1] + "'");
        for (std::size_t k = 0; k < len; ++k)
            contract_check(block.edge_ids()[k] == ids[end - len + k],
                           "theta_inverse: path does not decompose into lift blocks");
        reversed.push_back(it->second);
        end -= len;
    }
    std::reverse(reversed.begin(), reversed.end());
    Path out = Path::of_edges(std::move(reversed));
    validate_path(lr.original, out);
    return out;
}

}  // namespace roadlag
