// json_io.hpp -- document formats: graph / coloring / certificate JSON
// schemas, report serialization, and DOT export.  All serializers emit keys
// in document order so identical inputs produce identical bytes.

#pragma once

#include <json.hpp>
#include <string>
#include <vector>

#include "roadlag/ckcheck.hpp"
#include "roadlag/coloring.hpp"
#include "roadlag/errors.hpp"
#include "roadlag/graph.hpp"
#include "roadlag/harness.hpp"
#include "roadlag/periodicity.hpp"
#include "roadlag/transform.hpp"

namespace roadlag {

using Json = nlohmann::ordered_json;

namespace detail {

inline const Json& expect_key(const Json& j, const std::string& key, const std::string& where) {
    if (!j.contains(key)) throw SchemaError(where + ": missing key '" + key + "'");
    return j.at(key);
}

inline void reject_unknown_keys(const Json& j, std::initializer_list<const char*> known,
                                const std::string& where) {
    for (auto it = j.begin(); it != j.end(); ++it) {
        bool ok = false;
        for (const char* k : known)
            if (it.key() == k) ok = true;
        if (!ok) throw SchemaError(where + ": unexpected key '" + it.key() + "'");
    }
}

inline std::string expect_string(const Json& j, const std::string& where) {
    if (!j.is_string()) throw SchemaError(where + ": expected a string");
    return j.get<std::string>();
}

inline int expect_int(const Json& j, const std::string& where) {
    if (!j.is_number_integer()) throw SchemaError(where + ": expected an integer");
    return j.get<int>();
}

}  // namespace detail

/// Graph schema:
///   {"vertices": ["u", ...], "edges": [{"id": "x", "src": "u", "rng": "w"}, ...]}
inline MultiGraph graph_from_json(const Json& j) {
    if (!j.is_object()) throw SchemaError("graph: expected a JSON object");
    detail::reject_unknown_keys(j, {"vertices", "edges"}, "graph");
    const Json& jv = detail::expect_key(j, "vertices", "graph");
    const Json& je = detail::expect_key(j, "edges", "graph");
    if (!jv.is_array()) throw SchemaError("graph.vertices: expected an array");
    if (!je.is_array()) throw SchemaError("graph.edges: expected an array");
    std::vector<std::string> vertices;
    vertices.reserve(jv.size());
    for (std::size_t i = 0; i < jv.size(); ++i)
        vertices.push_back(detail::expect_string(jv[i], "vertices[" + std::to_string(i) + "]"));
    std::vector<Edge> edges;
    edges.reserve(je.size());
    for (std::size_t i = 0; i < je.size(); ++i) {
        const Json& e = je[i];
        std::string where = "edges[" + std::to_string(i) + "]";
        if (!e.is_object()) throw SchemaError(where + ": expected an object");
        detail::reject_unknown_keys(e, {"id", "src", "rng"}, where);
        edges.push_back({detail::expect_string(detail::expect_key(e, "id", where), where + ".id"),
                         detail::expect_string(detail::expect_key(e, "src", where), where + ".src"),
                         detail::expect_string(detail::expect_key(e, "rng", where), where + ".rng")});
    }
    return MultiGraph(std::move(vertices), std::move(edges));
}

inline MultiGraph parse_graph(const std::string& text) {
    Json j;
    try {
        j = Json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw SchemaError(std::string("malformed JSON: ") + e.what());
    }
    return graph_from_json(j);
}

inline Json graph_to_json(const MultiGraph& g) {
    Json j;
    j["vertices"] = g.vertex_ids();
    Json edges = Json::array();
    for (const Edge& e : g.edges()) {
        Json je;
        je["id"] = e.id;
        je["src"] = e.src;
        je["rng"] = e.rng;
        edges.push_back(std::move(je));
    }
    j["edges"] = std::move(edges);
    return j;
}

/// One line per edge, document order; vertices are listed first so isolated
/// ones survive the round trip.
inline std::string export_dot(const MultiGraph& g) {
    std::string out = "digraph G {\n";
    for (const auto& v : g.vertex_ids()) out += "  \"" + v + "\";\n";
    for (const Edge& e : g.edges())
        out += "  \"" + e.src + "\" -> \"" + e.rng + "\" [label=\"" + e.id + "\"];\n";
    out += "}\n";
    return out;
}

/// Coloring schema: {"d": 2, "colors": {"x": 1, ...}}
inline StrongColoring coloring_from_json(std::shared_ptr<const MultiGraph> g, const Json& j) {
    if (!j.is_object()) throw SchemaError("coloring: expected a JSON object");
    detail::reject_unknown_keys(j, {"d", "colors"}, "coloring");
    int d = detail::expect_int(detail::expect_key(j, "d", "coloring"), "coloring.d");
    const Json& jc = detail::expect_key(j, "colors", "coloring");
    if (!jc.is_object()) throw SchemaError("coloring.colors: expected an object");
    std::unordered_map<std::string, int> colors;
    for (auto it = jc.begin(); it != jc.end(); ++it)
        colors[it.key()] = detail::expect_int(it.value(), "coloring.colors['" + it.key() + "']");
    StrongColoring c = StrongColoring::create(std::move(g), colors);
    if (c.num_colors() != d)
        throw SchemaError("coloring: declared d = " + std::to_string(d) +
                          " but the graph is in-degree " + std::to_string(c.num_colors()) +
                          "-regular");
    return c;
}

inline StrongColoring parse_coloring(std::shared_ptr<const MultiGraph> g,
                                     const std::string& text) {
    Json j;
    try {
        j = Json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw SchemaError(std::string("malformed JSON: ") + e.what());
    }
    return coloring_from_json(std::move(g), j);
}

inline Json coloring_to_json(const StrongColoring& c) {
    Json j;
    j["d"] = c.num_colors();
    Json colors;
    for (int e = 0; e < c.graph().edge_count(); ++e)
        colors[c.graph().edge(e).id] = c.color_at(e);
    j["colors"] = std::move(colors);
    return j;
}

/// Certificate schema: {"word": [1,2,...], "targets": ["u", ...], "rank": p}
inline Json certificate_to_json(const SyncCertificate& cert) {
    Json j;
    j["word"] = cert.word;
    j["targets"] = cert.targets;
    j["rank"] = cert.rank;
    return j;
}

inline Json decomposition_to_json(const MultiGraph& g, const CyclicDecomposition& dec) {
    Json j;
    j["period"] = dec.period;
    Json classes;
    for (const auto& v : g.vertex_ids()) classes[v] = dec.class_of.at(v);
    j["classes"] = std::move(classes);
    return j;
}

inline Json contraction_steps_to_json(const std::vector<ContractionStep>& steps) {
    Json arr = Json::array();
    for (const auto& s : steps) {
        Json js;
        js["removed_vertex"] = s.removed_vertex;
        js["removed_edge"] = s.removed_edge;
        Json red;
        for (const auto& r : s.redirected) {
            Json jr;
            jr["src"] = r.src;
            jr["rng"] = r.rng;
            red[r.id] = std::move(jr);
        }
        js["redirected"] = std::move(red);
        arr.push_back(std::move(js));
    }
    return arr;
}

inline Json lag_result_to_json(const LagResult& lr) {
    Json j;
    j["graph"] = graph_to_json(lr.lagged);
    Json theta;
    for (const Edge& e : lr.original.edges()) theta[e.id] = lr.theta_edge.at(e.id).edge_ids();
    j["theta"] = std::move(theta);
    Json added;
    for (const auto& [v, vs] : lr.added_vertices) added[v] = vs;
    j["added_vertices"] = std::move(added);
    Json ordering;
    for (const auto& [v, us] : lr.ordering_used) ordering[v] = us;
    j["ordering_used"] = std::move(ordering);
    return j;
}

inline Json rank_to_json(const RankResult& r) {
    Json j;
    j["rank"] = r.rank;
    j["witness"] = r.witness;
    return j;
}

inline Json prefix_report_to_json(const PrefixCodeReport& report) {
    Json j;
    j["pass"] = report.pass;
    Json verts = Json::array();
    for (const auto& vr : report.vertices) {
        Json jv;
        jv["vertex"] = vr.vertex;
        Json labels = Json::array();
        for (const auto& w : vr.labels) labels.push_back(word_string(w));
        jv["labels"] = std::move(labels);
        jv["prefix_free"] = vr.check.prefix_free;
        jv["kraft"] = vr.check.kraft_num.str() + "/" + vr.check.kraft_den.str();
        jv["maximal"] = vr.check.maximal;
        verts.push_back(std::move(jv));
    }
    j["vertices"] = std::move(verts);
    return j;
}

inline Json road_report_to_json(const RoadColoringReport& r) {
    Json j;
    j["period"] = r.period;
    j["colorings"] = r.coloring_count;
    j["ranks"] = r.ranks;
    if (r.witness_index)
        j["witness_index"] = *r.witness_index;
    else
        j["witness_index"] = nullptr;
    j["exists_rank_p"] = r.exists_rank_p;
    j["all_rank_ge_p"] = r.all_rank_ge_p;
    j["pass"] = r.pass;
    return j;
}

inline Json pipeline_report_to_json(const PipelineReport& r) {
    Json j;
    j["contractions"] = contraction_steps_to_json(r.contractions);
    j["normalized"] = graph_to_json(r.normalized);
    j["lag"] = lag_result_to_json(r.lag);
    j["period"] = r.lag_period;
    j["coloring_index"] = r.coloring_index;
    j["coloring"] = coloring_to_json(*r.coloring);
    j["certificate"] = certificate_to_json(r.certificate);
    Json labels;
    for (const Edge& e : r.normalized.edges())
        labels[e.id] = word_string(r.labeling->label_of(e.id));
    j["labeling"] = std::move(labels);
    j["prefix_code"] = prefix_report_to_json(r.prefix_report);
    j["pass"] = r.pass;
    return j;
}

}  // namespace roadlag
