// Acceptance suite.  Runs every top-level verification criterion at its
// stated tolerance and prints one PASS/FAIL line per criterion; the exit
// status is the number of failed criteria.
//
//   1  road-coloring existence and the rank lower bound, exhaustively over
//      all transitive in-degree-2-regular multigraphs on <= 4 vertices
//   2  maximal-prefix-code identity for every strong 2-coloring of every
//      full lag in that family, Kraft sums exact
//   3  golden shapes for the d-loop bouquets (d = 3, 4, 5) and the repeated
//      loop color as a synchronizing word
//   4  rank via image-set search == brute-force word enumeration
//   5  contraction / lag counting lemmas and theta round-trips
//   6  cycle lifting: labels and injectivity for all short words
//   7  byte-identical CLI output across repeated runs and worker counts

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <functional>
#include <iostream>
#include <set>
#include <string>
#include <sys/wait.h>
#include <vector>

#include "fixtures.hpp"
#include "oracles.hpp"
#include "roadlag/ckcheck.hpp"
#include "roadlag/harness.hpp"
#include "roadlag/json_io.hpp"

using namespace roadlag;

namespace {

int g_failures = 0;

void criterion(int number, const std::string& title, double time_limit_s,
               const std::function<std::string()>& body) {
    auto start = std::chrono::steady_clock::now();
    std::string detail;
    std::string failure;
    try {
        detail = body();
    } catch (const std::exception& e) {
        failure = e.what();
    }
    double elapsed =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (failure.empty() && time_limit_s > 0 && elapsed > time_limit_s)
        failure = "exceeded the time limit of " + std::to_string(time_limit_s) + "s";
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.2fs", elapsed);
    if (failure.empty()) {
        std::cout << "PASS criterion " << number << ": " << title << " [" << detail << "] ("
                  << buf << ")\n";
    } else {
        ++g_failures;
        std::cout << "FAIL criterion " << number << ": " << title << " -- " << failure << " ("
                  << buf << ")\n";
    }
    std::cout.flush();
}

void require(bool ok, const std::string& what) {
    if (!ok) throw std::runtime_error(what);
}

std::vector<MultiGraph> family_2regular(int max_vertices) {
    GraphFamilySpec spec;
    spec.max_vertices = max_vertices;
    spec.in_degree = 2;
    return enumerate_graphs_vec(spec);
}

// ---------------------------------------------------------------- criterion 1

std::string criterion_road_coloring() {
    auto graphs = family_2regular(4);
    for (const MultiGraph& g : graphs) {
        RoadColoringReport r = verify_road_coloring(g, {}, 8);
        require(r.exists_rank_p, "no rank-p coloring for " + graph_to_json(g).dump());
        require(r.all_rank_ge_p, "rank below period for " + graph_to_json(g).dump());
    }
    return std::to_string(graphs.size()) + " graphs";
}

// ---------------------------------------------------------------- criterion 2

std::string criterion_ck_identity() {
    auto graphs = family_2regular(4);
    std::uint64_t labelings = 0;
    for (const MultiGraph& g : graphs) {
        if (is_cycle_graph(g)) continue;
        LagResult lr = full_lag(g);
        auto lagged = std::make_shared<const MultiGraph>(lr.lagged);
        StrongColoringEnumerator en(lagged);
        for (std::uint64_t i = 0; i < en.count(); ++i) {
            PrefixCodeReport report = verify_ck(build_labeling(lr, en.at(i)));
            require(report.pass, "prefix-code failure on " + graph_to_json(g).dump());
            for (const auto& vr : report.vertices)
                require(vr.check.kraft_num == 1 && vr.check.kraft_den == 1,
                        "Kraft sum != 1 at vertex " + vr.vertex);
            ++labelings;
        }
    }
    return std::to_string(labelings) + " labelings";
}

// ---------------------------------------------------------------- criterion 3

std::string criterion_bouquets() {
    for (int d = 3; d <= 5; ++d) {
        MultiGraph g = fixtures::loops(d);
        LagResult lr = full_lag(g);
        for (const auto& v : lr.lagged.vertex_ids())
            require(in_degree(lr.lagged, v) == 2, "lag in-degree != 2 at d=" + std::to_string(d));
        std::vector<int> expected;
        for (int j = 1; j <= d - 1; ++j) expected.push_back(j);
        expected.push_back(d - 1);
        std::vector<int> got;
        for (const Edge& e : g.edges()) got.push_back(lr.theta_edge.at(e.id).length());
        std::sort(got.begin(), got.end());
        std::sort(expected.begin(), expected.end());
        require(got == expected, "lift lengths mismatch at d=" + std::to_string(d));

        auto lagged = std::make_shared<const MultiGraph>(lr.lagged);
        StrongColoringEnumerator en(lagged);
        for (std::uint64_t i = 0; i < en.count(); ++i) {
            StrongColoring c = en.at(i);
            Labeling lab = build_labeling(lr, c);
            for (const Edge& e : g.edges())
                require(lab.label_of(e.id).size() == lr.theta_edge.at(e.id).edge_ids().size(),
                        "label length != lift length");
            ColorWord word(static_cast<std::size_t>(d), c.color_of("e0#hat"));
            for (const auto& u : lr.lagged.vertex_ids())
                require(act(c, u, word) == "v",
                        "repeated loop color fails to synchronize at d=" + std::to_string(d));
        }
    }
    return "d = 3, 4, 5";
}

// ---------------------------------------------------------------- criterion 4

std::string criterion_rank_oracle() {
    auto graphs = family_2regular(3);
    std::uint64_t colorings = 0;
    for (const MultiGraph& g : graphs) {
        auto shared = std::make_shared<const MultiGraph>(g);
        StrongColoringEnumerator en(shared);
        int max_len = 1 << g.vertex_count();
        for (std::uint64_t i = 0; i < en.count(); ++i) {
            StrongColoring c = en.at(i);
            std::map<std::string, int> colors;
            for (int e = 0; e < g.edge_count(); ++e) colors[g.edge(e).id] = c.color_at(e);
            int fast = rank(c).rank;
            int brute = oracle::brute_rank(g, colors, 2, max_len);
            require(fast == brute, "rank mismatch (" + std::to_string(fast) + " vs " +
                                       std::to_string(brute) + ") on " +
                                       graph_to_json(g).dump());
            ++colorings;
        }
    }
    return std::to_string(colorings) + " colorings";
}

// ---------------------------------------------------------------- criterion 5

MultiGraph subdivide_edge(const MultiGraph& g, int which) {
    std::vector<std::string> vs = g.vertex_ids();
    vs.push_back("xsub");
    std::vector<Edge> es;
    for (int e = 0; e < g.edge_count(); ++e) {
        Edge ed = g.edge(e);
        if (e == which) {
            es.push_back({ed.id + "a", ed.src, "xsub"});
            es.push_back({ed.id + "b", "xsub", ed.rng});
        } else {
            es.push_back(ed);
        }
    }
    return MultiGraph(std::move(vs), std::move(es));
}

std::string criterion_transformation_lemmas() {
    // contraction lemma over subdivided regular graphs
    std::uint64_t contractions = 0;
    for (const MultiGraph& base : family_2regular(3)) {
        for (int which = 0; which < base.edge_count(); ++which) {
            MultiGraph g = subdivide_edge(base, which);
            require(is_transitive(g) && !is_cycle_graph(g), "bad subdivision fixture");
            int ones = 0;
            for (const auto& v : g.vertex_ids())
                if (in_degree(g, v) == 1) ++ones;
            for (const Edge& e : g.edges()) {
                if (in_degree(g, e.rng) != 1) continue;
                auto [out, step] = contract_edge(g, e.id);
                int ones_after = 0;
                for (const auto& v : out.vertex_ids())
                    if (in_degree(out, v) == 1) ++ones_after;
                require(ones_after == ones - 1, "in-degree-1 count did not drop by 1");
                require(is_transitive(out), "contraction lost transitivity");
                require(!is_cycle_graph(out), "contraction produced a cycle graph");
                ++contractions;
            }
        }
    }

    // lag lemma over in-degree >= 3 vertices
    std::uint64_t lags = 0;
    GraphFamilySpec spec3;
    spec3.max_vertices = 2;
    spec3.in_degree = 3;
    std::vector<MultiGraph> laggable = enumerate_graphs_vec(spec3);
    for (int d = 3; d <= 5; ++d) laggable.push_back(fixtures::loops(d));
    for (const MultiGraph& g : laggable) {
        int ge3 = 0;
        for (const auto& v : g.vertex_ids())
            if (in_degree(g, v) >= 3) ++ge3;
        for (const auto& v : g.vertex_ids()) {
            if (in_degree(g, v) < 3) continue;
            LagStep step = lag_at_vertex(g, v);
            int ge3_after = 0;
            for (const auto& u : step.lagged.vertex_ids())
                if (in_degree(step.lagged, u) >= 3) ++ge3_after;
            require(ge3_after == ge3 - 1, "in-degree->=3 count did not drop by 1");
            require(is_transitive(step.lagged), "lag lost transitivity");
            ++lags;
        }
    }

    // theta round-trips on 10^4 random paths
    std::mt19937 rng(777);
    std::vector<MultiGraph> pool{fixtures::loops(3), fixtures::loops(4), fixtures::loops(5),
                                 fixtures::two_loop_graph(), fixtures::parallel2()};
    pool.push_back(MultiGraph({"a", "b"},
                              {{"e1", "a", "a"},
                               {"e2", "b", "a"},
                               {"e3", "b", "a"},
                               {"e4", "a", "b"},
                               {"e5", "b", "b"}}));
    std::vector<LagResult> lagged;
    for (const MultiGraph& g : pool) lagged.push_back(full_lag(g));
    for (int trial = 0; trial < 10000; ++trial) {
        std::size_t pick = trial % pool.size();
        const MultiGraph& g = pool[pick];
        Path p = fixtures::random_path(rng, g, 1 + static_cast<int>(rng() % 10));
        Path q = theta_path(lagged[pick], p);
        require(theta_inverse(lagged[pick], q) == p, "theta round-trip failed");
    }
    return std::to_string(contractions) + " contractions, " + std::to_string(lags) +
           " lags, 10000 round-trips";
}

// ---------------------------------------------------------------- criterion 6

std::string criterion_cycle_lifting() {
    std::vector<MultiGraph> graphs;
    for (const MultiGraph& g : family_2regular(3))
        if (!is_cycle_graph(g)) graphs.push_back(g);
    graphs.push_back(fixtures::loops(3));
    graphs.push_back(fixtures::loops(4));
    graphs.push_back(fixtures::loops_and_spur());

    std::uint64_t lifts = 0;
    for (const MultiGraph& g : graphs) {
        PipelineReport pr = full_pipeline(g);
        const LagResult& lr = pr.lag;
        const StrongColoring& c = *pr.coloring;
        int p = pr.lag_period;
        auto base = is_p_synchronizing(c);
        require(base.has_value(), "pipeline coloring lost its certificate");
        for (const auto& v : lr.original.vertex_ids()) {
            ColorWord gamma_v = sync_word_for_vertex(lr, c, v, base);
            std::set<std::vector<std::string>> seen;
            std::uint64_t expected = 0;
            for (int len = 0; len <= 4; ++len) {
                if (len % p != 0) continue;
                for (std::uint64_t code = 0; code < (std::uint64_t{1} << len); ++code) {
                    ColorWord gamma;
                    for (int i = 0; i < len; ++i)
                        gamma.push_back(static_cast<int>((code >> i) & 1) + 1);
                    Path mu = lift_word_to_cycle(lr, c, v, gamma, base);
                    require(range(lr.original, mu) == v && source(lr.original, mu) == v,
                            "lift is not a cycle at " + v);
                    ColorWord ell = colors_of(c, theta_path(lr, mu));
                    require(ell == concat_words(gamma, gamma_v), "lift label != gamma . gamma_v");
                    seen.insert(mu.edge_ids());
                    ++expected;
                    ++lifts;
                }
            }
            require(seen.size() == expected, "two words lifted to the same cycle at " + v);
        }
    }
    return std::to_string(lifts) + " lifts";
}

// ---------------------------------------------------------------- criterion 7

struct CliResult {
    std::string out;
    int code = -1;
};

std::string g_cli_path;

CliResult run_shell(const std::string& command) {
    std::string cmd = command + " 2>/dev/null";
    FILE* pipe = popen(cmd.c_str(), "r");
    if (!pipe) throw std::runtime_error("popen failed for: " + cmd);
    CliResult res;
    char buf[4096];
    std::size_t n;
    while ((n = fread(buf, 1, sizeof(buf), pipe)) > 0) res.out.append(buf, n);
    int status = pclose(pipe);
    res.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return res;
}

CliResult run_cli(const std::string& args) { return run_shell(g_cli_path + " " + args); }

void write_file(const std::string& path, const std::string& text) {
    FILE* f = fopen(path.c_str(), "wb");
    if (!f) throw std::runtime_error("cannot write " + path);
    fwrite(text.data(), 1, text.size(), f);
    fclose(f);
}

std::string criterion_cli_determinism() {
    char tmpl[] = "/tmp/roadlag-accept-XXXXXX";
    const char* dir = mkdtemp(tmpl);
    if (!dir) throw std::runtime_error("mkdtemp failed");
    std::string d(dir);

    write_file(d + "/two_loop.json", graph_to_json(fixtures::two_loop_graph()).dump());
    write_file(d + "/loops3.json", graph_to_json(fixtures::loops(3)).dump());
    write_file(d + "/parallel.json", graph_to_json(fixtures::parallel2()).dump());
    write_file(d + "/chain.json", graph_to_json(fixtures::chain_loop()).dump());
    write_file(d + "/cycle4.json", graph_to_json(fixtures::cycle(4)).dump());
    write_file(d + "/c1.json", R"({"d":2,"colors":{"x":1,"y":1,"z":2,"w":2}})");
    write_file(d + "/c2.json", R"({"d":2,"colors":{"x":1,"y":2,"z":2,"w":1}})");

    const std::vector<std::pair<std::string, int>> commands = {
        {"analyze -i " + d + "/parallel.json", 0},
        {"analyze -i " + d + "/parallel.json --format text", 0},
        {"contract -i " + d + "/chain.json", 0},
        {"lag -i " + d + "/loops3.json", 0},
        {"lag -i " + d + "/loops3.json --format dot", 0},
        {"rank -i " + d + "/two_loop.json --coloring " + d + "/c1.json", 0},
        {"sync-word -i " + d + "/two_loop.json --coloring " + d + "/c1.json", 0},
        {"color-search -i " + d + "/two_loop.json", 0},
        {"verify-ck -i " + d + "/loops3.json", 0},
        {"pipeline -i " + d + "/loops3.json", 0},
        {"pipeline -i " + d + "/two_loop.json", 0},
        {"enumerate --max-vertices 3 --d 2", 0},
        {"verify-all --max-vertices 3 --d 2", 0},
        {"verify-all --max-vertices 2 --d 2 --dedup", 0},
        {"export-dot -i " + d + "/parallel.json", 0},
    };
    std::uint64_t runs = 0;
    for (const auto& [args, expect_code] : commands) {
        std::vector<std::string> outs;
        for (const char* jobs : {"1", "1", "8", "8"}) {
            CliResult r = run_cli(args + " --jobs " + std::string(jobs));
            require(r.code == expect_code, "exit code " + std::to_string(r.code) + " != " +
                                               std::to_string(expect_code) + " for: " + args);
            outs.push_back(r.out);
            ++runs;
        }
        for (const auto& o : outs)
            require(o == outs[0], "stdout differs between runs of: " + args);
        require(!outs[0].empty(), "empty stdout for: " + args);
    }

    // exit-code contract
    require(run_cli("pipeline -i " + d + "/cycle4.json").code == 2, "cycle rejection code != 2");
    require(run_cli("sync-word -i " + d + "/two_loop.json --coloring " + d + "/c2.json").code ==
                1,
            "non-synchronizing coloring code != 1");
    require(run_cli("color-search -i " + d + "/two_loop.json --coloring-cap 0").code == 3,
            "budget exhaustion code != 3");
    require(run_cli("analyze -i " + d + "/no_such_file.json").code == 2, "missing input code != 2");
    CliResult stdin_run = run_cli("analyze < " + d + "/parallel.json");
    require(stdin_run.code == 0 && !stdin_run.out.empty(), "stdin input failed");
    require(stdin_run.out == run_cli("analyze -i " + d + "/parallel.json").out,
            "stdin and file input differ");
    require(run_shell("ROADLAG_BUDGET=0 " + g_cli_path + " color-search -i " + d +
                      "/two_loop.json")
                    .code == 3,
            "ROADLAG_BUDGET override did not take effect");

    return std::to_string(runs) + " runs over " + std::to_string(commands.size()) + " commands";
}

}  // namespace

int main(int argc, char** argv) {
    for (int i = 1; i + 1 < argc; ++i)
        if (std::strcmp(argv[i], "--cli") == 0) g_cli_path = argv[i + 1];

    criterion(1, "road-coloring existence and rank lower bound (n <= 4, d = 2)", 60,
              criterion_road_coloring);
    criterion(2, "maximal prefix codes with exact Kraft sums over all lag colorings", 120,
              criterion_ck_identity);
    criterion(3, "loop-bouquet lag shape, label lengths and synchronizing word", 1,
              criterion_bouquets);
    criterion(4, "image-set rank equals brute-force word enumeration (n <= 3)", 30,
              criterion_rank_oracle);
    criterion(5, "contraction and lag counting lemmas, theta round-trips", 30,
              criterion_transformation_lemmas);
    criterion(6, "cycle lifting: labels and injectivity for all short words", 60,
              criterion_cycle_lifting);
    if (g_cli_path.empty()) {
        std::cout << "FAIL criterion 7: CLI determinism -- no --cli path given\n";
        ++g_failures;
    } else {
        criterion(7, "byte-identical CLI output across runs and worker counts", 0,
                  criterion_cli_determinism);
    }
    return g_failures;
}
