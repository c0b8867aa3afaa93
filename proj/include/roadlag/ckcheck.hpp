// ckcheck.hpp -- the lifted binary labeling of a graph through its full lag,
// and the prefix-code form of the Cuntz-Krieger summation identity.
//
// A strong 2-coloring c of the lagged graph assigns every original edge g the
// word ell(g) = c(theta(g)).  For two isometries with orthogonal ranges
// summing to the identity, sum_e Z_ell(e) Z*_ell(e) = I at a vertex holds
// exactly when the label set of its in-edges is a maximal prefix code over
// {1,2}: prefix-free with Kraft sum exactly 1.  That equivalence is what this
// module decides; no operators are represented anywhere.

#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "roadlag/coloring.hpp"
#include "roadlag/errors.hpp"
#include "roadlag/graph.hpp"
#include "roadlag/transform.hpp"

namespace roadlag {

using BigInt = boost::multiprecision::cpp_int;

/// Binary labels of the original edges, inherited from a strong 2-coloring of
/// the lagged graph.  Only build_labeling constructs these, so every instance
/// satisfies |label(e)| = |theta(e)|.
class Labeling {
public:
    const MultiGraph& graph() const { return graph_; }

    const ColorWord& label_of(const std::string& edge_id) const {
        auto it = labels_.find(edge_id);
        if (it == labels_.end())
            throw PreconditionError("labeling: unknown edge '" + edge_id + "'");
        return it->second;
    }

private:
    friend Labeling build_labeling(const LagResult&, const StrongColoring&);

    Labeling(MultiGraph graph, std::unordered_map<std::string, ColorWord> labels)
        : graph_(std::move(graph)), labels_(std::move(labels)) {}

    MultiGraph graph_;
    std::unordered_map<std::string, ColorWord> labels_;
};

inline Labeling build_labeling(const LagResult& lr, const StrongColoring& c) {
    if (!(c.graph() == lr.lagged))
        throw PreconditionError("build_labeling: coloring is not defined on the lagged graph");
    contract_check(c.num_colors() == 2, "build_labeling: lagged graph coloring must use 2 colors");
    std::unordered_map<std::string, ColorWord> labels;
    labels.reserve(static_cast<std::size_t>(lr.original.edge_count()));
    for (int e = 0; e < lr.original.edge_count(); ++e) {
        const std::string& id = lr.original.edge(e).id;
        labels.emplace(id, colors_of(c, lr.theta_edge.at(id)));
    }
    return Labeling(lr.original, std::move(labels));
}

/// ell on paths is letterwise concatenation of edge labels.
inline ColorWord label_of_path(const Labeling& lab, const Path& p) {
    validate_path(lab.graph(), p);
    ColorWord w;
    for (const auto& eid : p.edge_ids()) w = concat_words(std::move(w), lab.label_of(eid));
    return w;
}

struct PrefixCodeCheck {
    bool prefix_free = false;
    BigInt kraft_num = 0;  // reduced; kraft = kraft_num / kraft_den exactly
    BigInt kraft_den = 1;
    bool maximal = false;
};

/// Decide whether a set of binary words is a maximal prefix code: pairwise
/// prefix-incomparable (duplicates fail) and Kraft sum exactly 1, in exact
/// rational arithmetic.
inline PrefixCodeCheck check_prefix_code(const std::vector<ColorWord>& words) {
    PrefixCodeCheck out;
    out.prefix_free = true;
    for (std::size_t i = 0; i < words.size() && out.prefix_free; ++i)
        for (std::size_t j = 0; j < words.size() && out.prefix_free; ++j) {
            if (i == j) continue;
            if (words[i].size() > words[j].size()) continue;
            if (std::equal(words[i].begin(), words[i].end(), words[j].begin()))
                out.prefix_free = false;
        }
    std::size_t max_len = 0;
    for (const auto& w : words) max_len = std::max(max_len, w.size());
    BigInt num = 0;
    for (const auto& w : words) num += BigInt(1) << (max_len - w.size());
    BigInt den = BigInt(1) << max_len;
    while (num != 0 && (num & 1) == 0 && (den & 1) == 0) {
        num >>= 1;
        den >>= 1;
    }
    out.kraft_num = num;
    out.kraft_den = den;
    out.maximal = out.prefix_free && num == 1 && den == 1;
    return out;
}

struct VertexCodeReport {
    std::string vertex;
    std::vector<ColorWord> labels;  // in-edge document order
    PrefixCodeCheck check;
};

struct PrefixCodeReport {
    std::vector<VertexCodeReport> vertices;  // document order
    bool pass = false;
};

/// Check the maximal-prefix-code condition at every vertex.  The report never
/// throws; callers that feed it labelings from build_labeling may assert
/// pass, which holds for every strong coloring.
inline PrefixCodeReport verify_ck(const Labeling& lab) {
    const MultiGraph& g = lab.graph();
    PrefixCodeReport report;
    report.pass = true;
    for (int v = 0; v < g.vertex_count(); ++v) {
        VertexCodeReport vr;
        vr.vertex = g.vertex_id(v);
        for (int e : g.in_edges(v)) vr.labels.push_back(lab.label_of(g.edge(e).id));
        vr.check = check_prefix_code(vr.labels);
        report.pass = report.pass && vr.check.maximal;
        report.vertices.push_back(std::move(vr));
    }
    return report;
}

/// A word sending every lagged vertex of v's cyclic class to v, obtained by
/// retargeting the certificate of the lagged coloring.
inline ColorWord sync_word_for_vertex(const LagResult& lr, const StrongColoring& c,
                                      const std::string& v,
                                      const std::optional<SyncCertificate>& base = std::nullopt,
                                      std::uint64_t bfs_cap = 1'000'000) {
    if (!(c.graph() == lr.lagged))
        throw PreconditionError("sync_word_for_vertex: coloring is not on the lagged graph");
    if (!lr.original.has_vertex(v))
        throw PreconditionError("sync_word_for_vertex: '" + v + "' is not an original vertex");
    std::optional<SyncCertificate> cert = base;
    if (!cert) cert = is_p_synchronizing(c, bfs_cap);
    if (!cert)
        throw PreconditionError("sync_word_for_vertex: coloring is not p-synchronizing");
    CyclicDecomposition dec = cyclic_decomposition(lr.lagged);
    SyncCertificate re = retarget_sync_word(c, *cert, dec.class_of.at(v), v);
    return re.word;
}

/// Lift a color word at v to a cycle of the original graph: back-track gamma
/// from v, close it up with the back-tracked synchronizing word of v, and
/// pull the lagged cycle through theta^{-1}.  Requires |gamma| divisible by
/// the lagged period.  The result mu is a cycle at v with
/// ell(mu) = gamma . gamma_v; both are re-checked.
inline Path lift_word_to_cycle(const LagResult& lr, const StrongColoring& c, const std::string& v,
                               const ColorWord& gamma,
                               const std::optional<SyncCertificate>& base = std::nullopt,
                               std::uint64_t bfs_cap = 1'000'000) {
    if (!(c.graph() == lr.lagged))
        throw PreconditionError("lift_word_to_cycle: coloring is not on the lagged graph");
    if (!lr.original.has_vertex(v))
        throw PreconditionError("lift_word_to_cycle: '" + v + "' is not an original vertex");
    int p = period(lr.lagged);
    if (gamma.size() % static_cast<std::size_t>(p) != 0)
        throw PreconditionError("lift_word_to_cycle: |gamma| = " + std::to_string(gamma.size()) +
                                " is not divisible by the period " + std::to_string(p));
    ColorWord gamma_v = sync_word_for_vertex(lr, c, v, base, bfs_cap);

    Path lambda_hat = backtrack(c, v, gamma);
    Path lambda_v = backtrack(c, source(lr.lagged, lambda_hat), gamma_v);
    contract_check(source(lr.lagged, lambda_v) == v,
                   "lift_word_to_cycle: synchronizing word missed '" + v + "'");
    Path cycle = concat(lr.lagged, lambda_hat, lambda_v);
    Path mu = theta_inverse(lr, cycle);

    contract_check(range(lr.original, mu) == v && source(lr.original, mu) == v,
                   "lift_word_to_cycle: lifted path is not a cycle at '" + v + "'");
    contract_check(colors_of(c, theta_path(lr, mu)) == concat_words(gamma, gamma_v),
                   "lift_word_to_cycle: label of the lifted cycle is not gamma . gamma_v");
    return mu;
}

}  // namespace roadlag
