// graph.hpp -- finite directed multigraphs with identified edges, and their paths.
//
// Edge direction runs source -> range.  Paths compose in operator order:
// a path e1...en satisfies s(e_i) = r(e_{i+1}), so edges are stored with the
// range-most edge FIRST and traversal runs right to left.  This is the
// reverse of the usual graph-library convention; every function below that
// touches paths follows it.

#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <queue>
#include <string>
#include <unordered_map>
#include <vector>

#include "roadlag/errors.hpp"

namespace roadlag {

struct Edge {
    std::string id;
    std::string src;
    std::string rng;

    bool operator==(const Edge&) const = default;
};

/// Immutable directed multigraph over opaque string ids.  Parallel edges and
/// loops are permitted and distinguished by edge id.  All iteration orders
/// are document order (the order vertices/edges were given at construction),
/// which makes every algorithm in this library deterministic.
class MultiGraph {
public:
    MultiGraph() = default;

    MultiGraph(std::vector<std::string> vertices, std::vector<Edge> edges)
        : vertices_(std::move(vertices)), edges_(std::move(edges)) {
        vmap_.reserve(vertices_.size());
        for (std::size_t i = 0; i < vertices_.size(); ++i) {
            auto [it, fresh] = vmap_.emplace(vertices_[i], static_cast<int>(i));
            (void)it;
            if (!fresh)
                throw SchemaError("duplicate vertex id '" + vertices_[i] +
                                  "' (vertices[" + std::to_string(i) + "])");
        }
        emap_.reserve(edges_.size());
        esrc_.reserve(edges_.size());
        erng_.reserve(edges_.size());
        in_.assign(vertices_.size(), {});
        out_.assign(vertices_.size(), {});
        for (std::size_t i = 0; i < edges_.size(); ++i) {
            const Edge& e = edges_[i];
            auto [it, fresh] = emap_.emplace(e.id, static_cast<int>(i));
            (void)it;
            if (!fresh)
                throw SchemaError("duplicate edge id '" + e.id + "' (edges[" +
                                  std::to_string(i) + "])");
            auto s = vmap_.find(e.src);
            if (s == vmap_.end())
                throw SchemaError("edge '" + e.id + "' (edges[" + std::to_string(i) +
                                  "]): unknown src vertex '" + e.src + "'");
            auto r = vmap_.find(e.rng);
            if (r == vmap_.end())
                throw SchemaError("edge '" + e.id + "' (edges[" + std::to_string(i) +
                                  "]): unknown rng vertex '" + e.rng + "'");
            esrc_.push_back(s->second);
            erng_.push_back(r->second);
            out_[s->second].push_back(static_cast<int>(i));
            in_[r->second].push_back(static_cast<int>(i));
        }
    }

    int vertex_count() const { return static_cast<int>(vertices_.size()); }
    int edge_count() const { return static_cast<int>(edges_.size()); }

    const std::vector<std::string>& vertex_ids() const { return vertices_; }
    const std::vector<Edge>& edges() const { return edges_; }

    const std::string& vertex_id(int i) const { return vertices_[static_cast<std::size_t>(i)]; }
    const Edge& edge(int i) const { return edges_[static_cast<std::size_t>(i)]; }

    bool has_vertex(const std::string& id) const { return vmap_.count(id) != 0; }
    bool has_edge(const std::string& id) const { return emap_.count(id) != 0; }

    int vertex_index(const std::string& id) const {
        auto it = vmap_.find(id);
        if (it == vmap_.end()) throw PreconditionError("unknown vertex '" + id + "'");
        return it->second;
    }

    int edge_index(const std::string& id) const {
        auto it = emap_.find(id);
        if (it == emap_.end()) throw PreconditionError("unknown edge '" + id + "'");
        return it->second;
    }

    int edge_src(int e) const { return esrc_[static_cast<std::size_t>(e)]; }
    int edge_rng(int e) const { return erng_[static_cast<std::size_t>(e)]; }

    /// In-edges of a vertex (edge indices, document order).
    const std::vector<int>& in_edges(int v) const { return in_[static_cast<std::size_t>(v)]; }
    /// Out-edges of a vertex (edge indices, document order).
    const std::vector<int>& out_edges(int v) const { return out_[static_cast<std::size_t>(v)]; }

    bool operator==(const MultiGraph& other) const {
        return vertices_ == other.vertices_ && edges_ == other.edges_;
    }

private:
    std::vector<std::string> vertices_;
    std::vector<Edge> edges_;
    std::unordered_map<std::string, int> vmap_;
    std::unordered_map<std::string, int> emap_;
    std::vector<int> esrc_;
    std::vector<int> erng_;
    std::vector<std::vector<int>> in_;
    std::vector<std::vector<int>> out_;
};

inline int in_degree(const MultiGraph& g, const std::string& v) {
    return static_cast<int>(g.in_edges(g.vertex_index(v)).size());
}

inline int out_degree(const MultiGraph& g, const std::string& v) {
    return static_cast<int>(g.out_edges(g.vertex_index(v)).size());
}

namespace detail {

/// Vertices reachable from `start` following edges forward (backward = false)
/// or against edge direction (backward = true).  Includes `start`.
inline std::vector<char> reach(const MultiGraph& g, int start, bool backward) {
    std::vector<char> seen(static_cast<std::size_t>(g.vertex_count()), 0);
    std::queue<int> q;
    seen[static_cast<std::size_t>(start)] = 1;
    q.push(start);
    while (!q.empty()) {
        int v = q.front();
        q.pop();
        const auto& es = backward ? g.in_edges(v) : g.out_edges(v);
        for (int e : es) {
            int w = backward ? g.edge_src(e) : g.edge_rng(e);
            if (!seen[static_cast<std::size_t>(w)]) {
                seen[static_cast<std::size_t>(w)] = 1;
                q.push(w);
            }
        }
    }
    return seen;
}

}  // namespace detail

/// True iff the graph is strongly connected.  A single vertex without a loop
/// counts: paths of length 0 connect a vertex to itself.
inline bool is_transitive(const MultiGraph& g) {
    if (g.vertex_count() == 0) throw PreconditionError("is_transitive: empty graph");
    auto fwd = detail::reach(g, 0, false);
    auto bwd = detail::reach(g, 0, true);
    for (int v = 0; v < g.vertex_count(); ++v)
        if (!fwd[static_cast<std::size_t>(v)] || !bwd[static_cast<std::size_t>(v)]) return false;
    return true;
}

/// True iff every vertex has in-degree exactly 1.  For transitive graphs this
/// characterizes the n-cycle.
inline bool is_cycle_graph(const MultiGraph& g) {
    if (!is_transitive(g)) throw PreconditionError("is_cycle_graph: graph is not transitive");
    for (int v = 0; v < g.vertex_count(); ++v)
        if (g.in_edges(v).size() != 1) return false;
    return true;
}

/// A finite path.  Length 0 is a single vertex; otherwise a nonempty edge
/// sequence e1...en in operator order (see file header).
class Path {
public:
    static Path at_vertex(std::string v) {
        Path p;
        p.vertex_ = std::move(v);
        return p;
    }

    static Path of_edges(std::vector<std::string> edge_ids) {
        if (edge_ids.empty())
            throw PreconditionError("Path::of_edges: empty edge list (use at_vertex)");
        Path p;
        p.edges_ = std::move(edge_ids);
        return p;
    }

    bool is_vertex() const { return edges_.empty(); }
    int length() const { return static_cast<int>(edges_.size()); }

    const std::vector<std::string>& edge_ids() const { return edges_; }

    const std::string& vertex_id() const {
        if (!is_vertex()) throw PreconditionError("Path::vertex_id: path has edges");
        return vertex_;
    }

    bool operator==(const Path&) const = default;

private:
    std::string vertex_;
    std::vector<std::string> edges_;
};

/// Throws unless p is a composable path of g.
inline void validate_path(const MultiGraph& g, const Path& p) {
    if (p.is_vertex()) {
        g.vertex_index(p.vertex_id());
        return;
    }
    int prev = -1;
    for (std::size_t i = 0; i < p.edge_ids().size(); ++i) {
        int e = g.edge_index(p.edge_ids()[i]);
        if (i > 0 && g.edge_rng(e) != prev)
            throw PreconditionError("invalid path: s('" + p.edge_ids()[i - 1] +
                                    "') != r('" + p.edge_ids()[i] + "')");
        prev = g.edge_src(e);
    }
}

inline std::string range(const MultiGraph& g, const Path& p) {
    if (p.is_vertex()) return p.vertex_id();
    return g.vertex_id(g.edge_rng(g.edge_index(p.edge_ids().front())));
}

inline std::string source(const MultiGraph& g, const Path& p) {
    if (p.is_vertex()) return p.vertex_id();
    return g.vertex_id(g.edge_src(g.edge_index(p.edge_ids().back())));
}

/// Operator-order concatenation: concat(p, q) first traverses q, then p.
/// Requires source(p) = range(q).
inline Path concat(const MultiGraph& g, const Path& p, const Path& q) {
    if (source(g, p) != range(g, q))
        throw PreconditionError("concat: source(p) = '" + source(g, p) +
                                "' differs from range(q) = '" + range(g, q) + "'");
    if (p.is_vertex()) return q;
    if (q.is_vertex()) return p;
    std::vector<std::string> ids = p.edge_ids();
    ids.insert(ids.end(), q.edge_ids().begin(), q.edge_ids().end());
    return Path::of_edges(std::move(ids));
}

/// Shortest path from `from` to `to` by BFS over out-edges in document order.
/// The result has source `from` and range `to`; from == to yields the
/// length-0 path.  Throws if no path exists.
inline Path find_path(const MultiGraph& g, const std::string& from, const std::string& to) {
    int s = g.vertex_index(from);
    int t = g.vertex_index(to);
    if (s == t) return Path::at_vertex(from);
    std::vector<int> parent_edge(static_cast<std::size_t>(g.vertex_count()), -1);
    std::vector<char> seen(static_cast<std::size_t>(g.vertex_count()), 0);
    seen[static_cast<std::size_t>(s)] = 1;
    std::queue<int> q;
    q.push(s);
    while (!q.empty()) {
        int v = q.front();
        q.pop();
        for (int e : g.out_edges(v)) {
            int w = g.edge_rng(e);
            if (seen[static_cast<std::size_t>(w)]) continue;
            seen[static_cast<std::size_t>(w)] = 1;
            parent_edge[static_cast<std::size_t>(w)] = e;
            if (w == t) {
                // Walk back from the target; that order is already operator order.
                std::vector<std::string> ids;
                int cur = t;
                while (cur != s) {
                    int pe = parent_edge[static_cast<std::size_t>(cur)];
                    ids.push_back(g.edge(pe).id);
                    cur = g.edge_src(pe);
                }
                return Path::of_edges(std::move(ids));
            }
            q.push(w);
        }
    }
    throw PreconditionError("find_path: no path from '" + from + "' to '" + to + "'");
}

}  // namespace roadlag
