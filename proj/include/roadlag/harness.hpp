// harness.hpp -- exhaustive enumeration of small in-degree regular
// multigraphs and end-to-end verification runs over them.

#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <memory>
#include <numeric>
#include <optional>
#include <string>
#include <unordered_set>
#include <vector>

#include "roadlag/ckcheck.hpp"
#include "roadlag/coloring.hpp"
#include "roadlag/errors.hpp"
#include "roadlag/graph.hpp"
#include "roadlag/parallel.hpp"
#include "roadlag/periodicity.hpp"
#include "roadlag/transform.hpp"

namespace roadlag {

struct GraphFamilySpec {
    int max_vertices = 3;
    int in_degree = 2;
    bool require_transitive = true;
    bool dedup = false;
    int hard_cap_vertices = 5;
    int hard_cap_degree = 3;
};

namespace detail {

inline std::uint64_t binom(std::uint64_t n, std::uint64_t k) {
    if (k > n) return 0;
    std::uint64_t r = 1;
    for (std::uint64_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

}  // namespace detail

/// The in-degree d-regular multigraphs on n labeled vertices, indexable:
/// every vertex picks a multiset of d in-edge sources, so there are
/// C(n+d-1, d)^n assignments; vertex 0 is the most significant digit.
/// Vertices are named v0..v{n-1}, the in-edges of vi are ei_0..ei_{d-1} in
/// non-decreasing source order.
class GraphFamily {
public:
    GraphFamily(int n, int d) : n_(n), d_(d) {
        if (n < 1) throw PreconditionError("GraphFamily: need at least one vertex");
        if (d < 1) throw PreconditionError("GraphFamily: need in-degree at least 1");
        per_vertex_ = detail::binom(static_cast<std::uint64_t>(n + d - 1),
                                    static_cast<std::uint64_t>(d));
        count_ = 1;
        for (int i = 0; i < n; ++i) {
            if (count_ > UINT64_MAX / per_vertex_) {
                count_ = UINT64_MAX;
                overflow_ = true;
                break;
            }
            count_ *= per_vertex_;
        }
    }

    int vertices() const { return n_; }
    int in_degree() const { return d_; }
    std::uint64_t assignment_count() const { return count_; }
    bool overflowed() const { return overflow_; }

    MultiGraph graph_at(std::uint64_t index) const {
        if (!overflow_ && index >= count_)
            throw PreconditionError("GraphFamily: assignment index out of range");
        std::vector<std::uint64_t> digit(static_cast<std::size_t>(n_));
        for (int v = n_ - 1; v >= 0; --v) {
            digit[static_cast<std::size_t>(v)] = index % per_vertex_;
            index /= per_vertex_;
        }
        std::vector<std::string> names;
        names.reserve(static_cast<std::size_t>(n_));
        for (int v = 0; v < n_; ++v) names.push_back("v" + std::to_string(v));
        std::vector<Edge> edges;
        edges.reserve(static_cast<std::size_t>(n_ * d_));
        for (int v = 0; v < n_; ++v) {
            auto sources = multiset_at(digit[static_cast<std::size_t>(v)]);
            for (int k = 0; k < d_; ++k)
                edges.push_back({"e" + std::to_string(v) + "_" + std::to_string(k),
                                 names[static_cast<std::size_t>(sources[static_cast<std::size_t>(k)])],
                                 names[static_cast<std::size_t>(v)]});
        }
        return MultiGraph(std::move(names), std::move(edges));
    }

private:
    /// k-th non-decreasing d-tuple over {0,...,n-1}, lexicographic.
    std::vector<int> multiset_at(std::uint64_t k) const {
        std::vector<int> tuple;
        tuple.reserve(static_cast<std::size_t>(d_));
        int lo = 0;
        for (int remaining = d_; remaining > 0; --remaining) {
            for (int v = lo; v < n_; ++v) {
                // multisets of size remaining-1 with values in {v,...,n-1}
                std::uint64_t block = detail::binom(
                    static_cast<std::uint64_t>((n_ - v) + remaining - 2),
                    static_cast<std::uint64_t>(remaining - 1));
                if (k < block) {
                    tuple.push_back(v);
                    lo = v;
                    break;
                }
                k -= block;
            }
        }
        return tuple;
    }

    int n_;
    int d_;
    std::uint64_t per_vertex_ = 0;
    std::uint64_t count_ = 0;
    bool overflow_ = false;
};

/// Lexicographically minimal adjacency-count encoding over all vertex
/// permutations; equal strings mean isomorphic multigraphs.
inline std::string canonical_form(const MultiGraph& g) {
    int n = g.vertex_count();
    std::vector<std::vector<int>> cnt(static_cast<std::size_t>(n),
                                      std::vector<int>(static_cast<std::size_t>(n), 0));
    for (int e = 0; e < g.edge_count(); ++e)
        ++cnt[static_cast<std::size_t>(g.edge_src(e))][static_cast<std::size_t>(g.edge_rng(e))];
    std::vector<int> perm(static_cast<std::size_t>(n));
    std::iota(perm.begin(), perm.end(), 0);
    std::string best;
    do {
        std::string enc;
        enc.reserve(static_cast<std::size_t>(n * n));
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                enc += static_cast<char>('0' + cnt[static_cast<std::size_t>(
                                                      perm[static_cast<std::size_t>(i)])]
                                                  [static_cast<std::size_t>(
                                                      perm[static_cast<std::size_t>(j)])]);
        if (best.empty() || enc < best) best = std::move(enc);
    } while (std::next_permutation(perm.begin(), perm.end()));
    return std::to_string(n) + ":" + best;
}

/// Stream all graphs of the family in deterministic order: vertex count
/// ascending, assignment index ascending.  The callback receives the graph,
/// its vertex count and its assignment index.
inline void enumerate_graphs(
    const GraphFamilySpec& spec,
    const std::function<void(const MultiGraph&, int, std::uint64_t)>& fn) {
    if (spec.max_vertices < 1 || spec.in_degree < 1)
        throw PreconditionError("enumerate_graphs: need max_vertices >= 1 and d >= 1");
    if (spec.max_vertices > spec.hard_cap_vertices)
        throw BudgetError("enumerate_graphs: max_vertices " + std::to_string(spec.max_vertices) +
                          " exceeds the hard cap " + std::to_string(spec.hard_cap_vertices));
    if (spec.in_degree > spec.hard_cap_degree)
        throw BudgetError("enumerate_graphs: in_degree " + std::to_string(spec.in_degree) +
                          " exceeds the hard cap " + std::to_string(spec.hard_cap_degree));
    std::unordered_set<std::string> seen;
    for (int n = 1; n <= spec.max_vertices; ++n) {
        GraphFamily fam(n, spec.in_degree);
        for (std::uint64_t i = 0; i < fam.assignment_count(); ++i) {
            MultiGraph g = fam.graph_at(i);
            if (spec.require_transitive && !is_transitive(g)) continue;
            if (spec.dedup && !seen.insert(canonical_form(g)).second) continue;
            fn(g, n, i);
        }
    }
}

inline std::vector<MultiGraph> enumerate_graphs_vec(const GraphFamilySpec& spec) {
    std::vector<MultiGraph> out;
    enumerate_graphs(spec, [&](const MultiGraph& g, int, std::uint64_t) { out.push_back(g); });
    return out;
}

struct RoadColoringReport {
    int period = 0;
    std::uint64_t coloring_count = 0;
    std::vector<int> ranks;  // per coloring index
    std::optional<std::uint64_t> witness_index;
    bool exists_rank_p = false;
    bool all_rank_ge_p = false;
    bool pass = false;
};

/// Exhaustively rank every strong coloring of g and check both halves of the
/// periodic road coloring statement: some coloring attains rank = period,
/// and none goes below it.
inline RoadColoringReport verify_road_coloring(const MultiGraph& g,
                                               const SearchBudget& budget = {}, int jobs = 1) {
    RoadColoringReport report;
    report.period = period(g);
    auto shared = std::make_shared<const MultiGraph>(g);
    StrongColoringEnumerator en(shared);
    if (en.overflowed() || en.count() > budget.coloring_cap)
        throw BudgetError("verify_road_coloring: coloring space exceeds the cap of " +
                          std::to_string(budget.coloring_cap));
    report.coloring_count = en.count();
    report.ranks = parallel_map_index<int>(en.count(), jobs, [&](std::uint64_t i) {
        return rank(en.at(i), budget.bfs_cap).rank;
    });
    report.all_rank_ge_p = true;
    for (std::uint64_t i = 0; i < report.ranks.size(); ++i) {
        int r = report.ranks[static_cast<std::size_t>(i)];
        if (r == report.period && !report.witness_index) {
            report.witness_index = i;
            report.exists_rank_p = true;
        }
        if (r < report.period) report.all_rank_ge_p = false;
    }
    report.pass = report.exists_rank_p && report.all_rank_ge_p;
    return report;
}

struct PipelineReport {
    MultiGraph input;
    std::vector<ContractionStep> contractions;
    MultiGraph normalized;
    LagResult lag;
    int lag_period = 0;
    std::uint64_t coloring_index = 0;
    std::optional<StrongColoring> coloring;
    SyncCertificate certificate;
    std::optional<Labeling> labeling;
    PrefixCodeReport prefix_report;
    bool pass = false;
};

namespace detail {

template <typename F>
auto pipeline_stage(const char* name, F&& f) {
    try {
        return f();
    } catch (const BudgetError& e) {
        throw BudgetError(std::string(name) + ": " + e.what());
    } catch (const SchemaError& e) {
        throw SchemaError(std::string(name) + ": " + e.what());
    } catch (const PreconditionError& e) {
        throw PreconditionError(std::string(name) + ": " + e.what());
    }
}

}  // namespace detail

/// The whole construction chained together: contract away in-degree-1
/// vertices, lag down to in-degree 2-regular, find a coloring of rank =
/// period with its certificate, lift the labeling and check the prefix-code
/// identity at every vertex.  Must pass for every transitive non-cycle
/// input; failure is an internal error.
inline PipelineReport full_pipeline(const MultiGraph& g, const SearchBudget& budget = {},
                                    int jobs = 1) {
    if (!is_transitive(g)) throw PreconditionError("pipeline: input graph is not transitive");
    if (is_cycle_graph(g))
        throw PreconditionError(
            "pipeline: input is a cycle graph; cycle graphs admit no coloring of rank below "
            "their period and are handled by a separate measure-theoretic construction that "
            "this toolkit does not compute");

    PipelineReport report;
    report.input = g;
    std::tie(report.normalized, report.contractions) = detail::pipeline_stage(
        "pipeline stage contract", [&] { return normalize_indegree2(g); });
    report.lag = detail::pipeline_stage("pipeline stage lag",
                                        [&] { return full_lag(report.normalized); });
    report.lag_period = period(report.lag.lagged);
    auto lagged = std::make_shared<const MultiGraph>(report.lag.lagged);
    ColoringSearchResult found = detail::pipeline_stage("pipeline stage color-search", [&] {
        return find_p_synchronizing_coloring(lagged, budget, jobs);
    });
    report.coloring_index = found.index;
    report.certificate = std::move(found.certificate);
    report.coloring = std::move(found.coloring);
    report.labeling = detail::pipeline_stage("pipeline stage labeling", [&] {
        return build_labeling(report.lag, *report.coloring);
    });
    report.prefix_report = verify_ck(*report.labeling);
    report.pass = report.prefix_report.pass;
    contract_check(report.pass, "pipeline: prefix-code check failed on a built labeling");
    return report;
}

}  // namespace roadlag
