// roadlag -- command-line front end for the multigraph toolkit.
//
// Machine-readable output goes to stdout, diagnostics to stderr.  Exit codes:
//   0  success / verified pass
//   1  verified fail (e.g. a failed prefix-code check) or internal inconsistency
//   2  usage, schema or precondition error
//   3  a search budget was exceeded

#include <CLI11.hpp>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "roadlag/json_io.hpp"

namespace {

using namespace roadlag;

struct CliConfig {
    std::string input = "-";
    std::string coloring_path;
    std::string format = "json";
    std::uint64_t coloring_cap = 1'000'000;
    std::uint64_t bfs_cap = 1'000'000;
    int jobs = 1;
    std::uint64_t seed = 0;  // reserved for external fuzz drivers; outputs are deterministic
    int max_vertices = 3;
    int d = 2;
    bool dedup = false;

    SearchBudget budget() const { return SearchBudget{coloring_cap, bfs_cap}; }
};

std::string slurp(const std::string& path) {
    if (path == "-") {
        std::ostringstream ss;
        ss << std::cin.rdbuf();
        return ss.str();
    }
    std::ifstream in(path, std::ios::binary);
    if (!in) throw PreconditionError("cannot open input file '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

MultiGraph load_graph(const CliConfig& cfg) { return parse_graph(slurp(cfg.input)); }

StrongColoring load_coloring(const CliConfig& cfg, std::shared_ptr<const MultiGraph> g) {
    return parse_coloring(std::move(g), slurp(cfg.coloring_path));
}

void emit(const std::string& s) { std::cout << s << std::flush; }

void emit_json(const Json& j) { emit(j.dump() + "\n"); }

int run_analyze(const CliConfig& cfg) {
    MultiGraph g = load_graph(cfg);
    CyclicDecomposition dec = cyclic_decomposition(g);
    if (cfg.format == "text") {
        std::string out = "period " + std::to_string(dec.period) + "\n";
        for (const auto& v : g.vertex_ids())
            out += "class " + v + " " + std::to_string(dec.class_of.at(v)) + "\n";
        emit(out);
    } else if (cfg.format == "dot") {
        throw PreconditionError("analyze: format 'dot' is not supported");
    } else {
        emit_json(decomposition_to_json(g, dec));
    }
    return 0;
}

int run_contract(const CliConfig& cfg) {
    MultiGraph g = load_graph(cfg);
    auto [out, steps] = normalize_indegree2(g);
    if (cfg.format == "dot") {
        emit(export_dot(out));
    } else if (cfg.format == "text") {
        std::string s;
        for (const auto& st : steps)
            s += "contracted " + st.removed_edge + " removing " + st.removed_vertex + "\n";
        s += "vertices " + std::to_string(out.vertex_count()) + " edges " +
             std::to_string(out.edge_count()) + "\n";
        emit(s);
    } else {
        Json j;
        j["graph"] = graph_to_json(out);
        j["steps"] = contraction_steps_to_json(steps);
        emit_json(j);
    }
    return 0;
}

int run_lag(const CliConfig& cfg) {
    MultiGraph g = load_graph(cfg);
    LagResult lr = full_lag(g);
    if (cfg.format == "dot") {
        emit(export_dot(lr.lagged));
    } else if (cfg.format == "text") {
        std::string s = "lagged vertices " + std::to_string(lr.lagged.vertex_count()) +
                        " edges " + std::to_string(lr.lagged.edge_count()) + "\n";
        for (const Edge& e : g.edges()) {
            s += "theta " + e.id + " =";
            for (const auto& id : lr.theta_edge.at(e.id).edge_ids()) s += " " + id;
            s += "\n";
        }
        emit(s);
    } else {
        emit_json(lag_result_to_json(lr));
    }
    return 0;
}

int run_rank(const CliConfig& cfg) {
    auto g = std::make_shared<const MultiGraph>(load_graph(cfg));
    StrongColoring c = load_coloring(cfg, g);
    RankResult r = rank(c, cfg.bfs_cap);
    if (cfg.format == "text")
        emit("rank " + std::to_string(r.rank) + " witness " + word_string(r.witness) + "\n");
    else
        emit_json(rank_to_json(r));
    return 0;
}

int run_sync_word(const CliConfig& cfg) {
    auto g = std::make_shared<const MultiGraph>(load_graph(cfg));
    StrongColoring c = load_coloring(cfg, g);
    auto cert = is_p_synchronizing(c, cfg.bfs_cap);
    if (!cert) {
        if (cfg.format == "text")
            emit("not p-synchronizing\n");
        else {
            Json j;
            j["synchronizing"] = false;
            emit_json(j);
        }
        return 1;
    }
    if (cfg.format == "text") {
        std::string s = "word " + word_string(cert->word) + " rank " +
                        std::to_string(cert->rank) + " targets";
        for (const auto& t : cert->targets) s += " " + t;
        emit(s + "\n");
    } else {
        emit_json(certificate_to_json(*cert));
    }
    return 0;
}

int run_color_search(const CliConfig& cfg) {
    auto g = std::make_shared<const MultiGraph>(load_graph(cfg));
    ColoringSearchResult res = find_p_synchronizing_coloring(g, cfg.budget(), cfg.jobs);
    if (cfg.format == "text") {
        emit("coloring index " + std::to_string(res.index) + " word " +
             word_string(res.certificate.word) + "\n");
    } else {
        Json j;
        j["index"] = res.index;
        j["coloring"] = coloring_to_json(res.coloring);
        j["certificate"] = certificate_to_json(res.certificate);
        emit_json(j);
    }
    return 0;
}

int run_verify_ck(const CliConfig& cfg) {
    MultiGraph g = load_graph(cfg);
    LagResult lr = full_lag(g);
    auto lagged = std::make_shared<const MultiGraph>(lr.lagged);
    std::optional<StrongColoring> c;
    if (!cfg.coloring_path.empty())
        c = load_coloring(cfg, lagged);
    else
        c = find_p_synchronizing_coloring(lagged, cfg.budget(), cfg.jobs).coloring;
    PrefixCodeReport report = verify_ck(build_labeling(lr, *c));
    if (cfg.format == "text") {
        std::string s;
        for (const auto& vr : report.vertices) {
            s += vr.vertex + " labels";
            for (const auto& w : vr.labels) s += " " + word_string(w);
            s += " kraft " + vr.check.kraft_num.str() + "/" + vr.check.kraft_den.str();
            s += vr.check.maximal ? " maximal" : " NOT-maximal";
            s += "\n";
        }
        s += report.pass ? "pass\n" : "fail\n";
        emit(s);
    } else {
        emit_json(prefix_report_to_json(report));
    }
    return report.pass ? 0 : 1;
}

int run_pipeline(const CliConfig& cfg) {
    MultiGraph g = load_graph(cfg);
    PipelineReport report = full_pipeline(g, cfg.budget(), cfg.jobs);
    if (cfg.format == "text") {
        emit("contractions " + std::to_string(report.contractions.size()) + " lag vertices " +
             std::to_string(report.lag.lagged.vertex_count()) + " period " +
             std::to_string(report.lag_period) + " coloring " +
             std::to_string(report.coloring_index) + (report.pass ? " pass" : " fail") + "\n");
    } else {
        emit_json(pipeline_report_to_json(report));
    }
    return report.pass ? 0 : 1;
}

int run_enumerate(const CliConfig& cfg) {
    GraphFamilySpec spec;
    spec.max_vertices = cfg.max_vertices;
    spec.in_degree = cfg.d;
    spec.dedup = cfg.dedup;
    std::string out;
    enumerate_graphs(spec, [&](const MultiGraph& g, int, std::uint64_t) {
        out += cfg.format == "dot" ? export_dot(g) : graph_to_json(g).dump() + "\n";
    });
    emit(out);
    return 0;
}

int run_verify_all(const CliConfig& cfg) {
    GraphFamilySpec spec;
    spec.max_vertices = cfg.max_vertices;
    spec.in_degree = cfg.d;
    if (spec.max_vertices > spec.hard_cap_vertices)
        throw BudgetError("verify-all: max_vertices exceeds the hard cap " +
                          std::to_string(spec.hard_cap_vertices));
    if (spec.in_degree > spec.hard_cap_degree)
        throw BudgetError("verify-all: d exceeds the hard cap " +
                          std::to_string(spec.hard_cap_degree));

    bool any_fail = false;
    bool any_budget = false;
    std::string out;
    std::unordered_set<std::string> seen;
    for (int n = 1; n <= spec.max_vertices; ++n) {
        GraphFamily fam(n, spec.in_degree);
        auto records = parallel_map_index<std::string>(
            fam.assignment_count(), cfg.jobs, [&](std::uint64_t i) -> std::string {
                MultiGraph g = fam.graph_at(i);
                if (!is_transitive(g)) return {};
                Json rec;
                rec["n"] = n;
                rec["index"] = i;
                rec["canonical"] = canonical_form(g);
                try {
                    RoadColoringReport rc = verify_road_coloring(g, cfg.budget(), 1);
                    rec["period"] = rc.period;
                    rec["colorings"] = rc.coloring_count;
                    rec["rank_min"] = *std::min_element(rc.ranks.begin(), rc.ranks.end());
                    rec["rank_max"] = *std::max_element(rc.ranks.begin(), rc.ranks.end());
                    if (rc.witness_index)
                        rec["witness_index"] = *rc.witness_index;
                    else
                        rec["witness_index"] = nullptr;
                    rec["road_coloring"] = rc.pass ? "pass" : "fail";
                    if (is_cycle_graph(g)) {
                        rec["pipeline"] = "skipped-cycle";
                    } else {
                        PipelineReport pr = full_pipeline(g, cfg.budget(), 1);
                        rec["pipeline"] = pr.pass ? "pass" : "fail";
                    }
                    rec["status"] = "ok";
                } catch (const BudgetError& e) {
                    rec["status"] = "budget-exceeded";
                    rec["detail"] = std::string(e.what());
                }
                return rec.dump();
            });
        for (const auto& line : records) {
            if (line.empty()) continue;
            Json rec = Json::parse(line);
            if (spec.dedup && !seen.insert(rec["canonical"].get<std::string>()).second) continue;
            if (rec["status"] == "budget-exceeded") any_budget = true;
            if ((rec.contains("road_coloring") && rec["road_coloring"] == "fail") ||
                (rec.contains("pipeline") && rec["pipeline"] == "fail"))
                any_fail = true;
            out += line + "\n";
        }
    }
    emit(out);
    if (any_fail) return 1;
    if (any_budget) return 3;
    return 0;
}

int run_export_dot(const CliConfig& cfg) {
    emit(export_dot(load_graph(cfg)));
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CliConfig cfg;
    if (const char* env = std::getenv("ROADLAG_BUDGET")) {
        try {
            std::uint64_t v = std::stoull(env);
            cfg.coloring_cap = v;
            cfg.bfs_cap = v;
        } catch (const std::exception&) {
            std::cerr << "error: ROADLAG_BUDGET is not a number: " << env << "\n";
            return 2;
        }
    }

    CLI::App app{"directed multigraph toolkit: periods, contractions, lags, road colorings and "
                 "prefix-code checks"};
    app.require_subcommand(1);

    int selected = -1;
    auto add_common = [&](CLI::App* sub, bool with_input) {
        if (with_input)
            sub->add_option("-i,--input", cfg.input, "graph JSON file, or - for stdin");
        sub->add_option("--format", cfg.format, "output format")
            ->check(CLI::IsMember({"json", "dot", "text"}));
        sub->add_option("--coloring-cap", cfg.coloring_cap, "max colorings examined");
        sub->add_option("--bfs-cap", cfg.bfs_cap, "max image sets visited per search");
        sub->add_option("--jobs", cfg.jobs, "worker threads (output is identical for any value)");
        sub->add_option("--seed", cfg.seed,
                        "reserved for external fuzz drivers; no subcommand consumes it");
        return sub;
    };
    auto pick = [&](int id) {
        return [&selected, id]() { selected = id; };
    };

    auto* analyze = add_common(app.add_subcommand("analyze", "period and cyclic decomposition"),
                               true);
    analyze->callback(pick(0));
    auto* contract = add_common(
        app.add_subcommand("contract", "contract in-degree-1 vertices away"), true);
    contract->callback(pick(1));
    auto* lag = add_common(app.add_subcommand("lag", "full lag and the theta table"), true);
    lag->callback(pick(2));
    auto* rank_cmd = add_common(app.add_subcommand("rank", "rank of a strong coloring"), true);
    rank_cmd->add_option("--coloring", cfg.coloring_path, "coloring JSON file")->required();
    rank_cmd->callback(pick(3));
    auto* sync = add_common(
        app.add_subcommand("sync-word", "p-synchronizing certificate of a coloring"), true);
    sync->add_option("--coloring", cfg.coloring_path, "coloring JSON file")->required();
    sync->callback(pick(4));
    auto* search = add_common(
        app.add_subcommand("color-search", "first coloring with rank = period"), true);
    search->callback(pick(5));
    auto* verify_ck_cmd = add_common(
        app.add_subcommand("verify-ck", "prefix-code check of the lifted labeling"), true);
    verify_ck_cmd->add_option("--coloring", cfg.coloring_path,
                              "coloring JSON file for the lagged graph (default: search)");
    verify_ck_cmd->callback(pick(6));
    auto* pipeline = add_common(
        app.add_subcommand("pipeline", "contract, lag, color and verify in one run"), true);
    pipeline->callback(pick(7));
    auto* enumerate = add_common(
        app.add_subcommand("enumerate", "stream small in-degree regular graphs"), false);
    enumerate->add_option("--max-vertices", cfg.max_vertices, "largest vertex count");
    enumerate->add_option("--d", cfg.d, "in-degree");
    enumerate->add_flag("--dedup", cfg.dedup, "collapse isomorphic graphs");
    enumerate->callback(pick(8));
    auto* verify_all = add_common(
        app.add_subcommand("verify-all", "road coloring + pipeline over the enumerated family"),
        false);
    verify_all->add_option("--max-vertices", cfg.max_vertices, "largest vertex count");
    verify_all->add_option("--d", cfg.d, "in-degree");
    verify_all->add_flag("--dedup", cfg.dedup, "collapse isomorphic graphs");
    verify_all->callback(pick(9));
    auto* dot = add_common(app.add_subcommand("export-dot", "graph in DOT form"), true);
    dot->callback(pick(10));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        switch (selected) {
            case 0: return run_analyze(cfg);
            case 1: return run_contract(cfg);
            case 2: return run_lag(cfg);
            case 3: return run_rank(cfg);
            case 4: return run_sync_word(cfg);
            case 5: return run_color_search(cfg);
            case 6: return run_verify_ck(cfg);
            case 7: return run_pipeline(cfg);
            case 8: return run_enumerate(cfg);
            case 9: return run_verify_all(cfg);
            case 10: return run_export_dot(cfg);
            default: return 2;
        }
    } catch (const BudgetError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const SchemaError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const PreconditionError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const ContractViolation& e) {
        std::cerr << "internal inconsistency: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
