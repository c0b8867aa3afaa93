// coloring.hpp -- strong edge colorings, the backward word action, rank, and
// p-synchronizing words.
//
// A strong edge coloring assigns colors {1,...,d} bijectively to each
// vertex's in-edges, which turns the reversed graph into a complete
// deterministic automaton: from any vertex, a word of colors back-tracks a
// unique path.  The action v . w is the source of that path.  One letter
// moves a vertex from cyclic class i to class i-1 (mod p), so any word
// collapsing classes to single vertices has length divisible by p.

#pragma once

#include <bit>
#include <cstdint>
#include <deque>
#include <memory>
#include <numeric>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "roadlag/errors.hpp"
#include "roadlag/graph.hpp"
#include "roadlag/parallel.hpp"
#include "roadlag/periodicity.hpp"

namespace roadlag {

/// A word in colors {1,...,d}; empty words act as the identity.
using ColorWord = std::vector<int>;

inline ColorWord concat_words(ColorWord a, const ColorWord& b) {
    a.insert(a.end(), b.begin(), b.end());
    return a;
}

/// Compact rendering: digit string for single-digit alphabets ("21"),
/// comma-separated otherwise.
inline std::string word_string(const ColorWord& w) {
    bool digits = true;
    for (int a : w)
        if (a < 1 || a > 9) digits = false;
    std::string out;
    for (std::size_t i = 0; i < w.size(); ++i) {
        if (!digits && i > 0) out += ',';
        out += std::to_string(w[i]);
    }
    return out;
}

namespace detail {

/// Common in-degree of an in-degree regular graph.
inline int regular_in_degree(const MultiGraph& g) {
    if (g.vertex_count() == 0)
        throw PreconditionError("coloring: empty graph");
    int d = static_cast<int>(g.in_edges(0).size());
    for (int v = 1; v < g.vertex_count(); ++v)
        if (static_cast<int>(g.in_edges(v).size()) != d)
            throw PreconditionError("coloring: graph is not in-degree regular ('" +
                                    g.vertex_id(v) + "' has in-degree " +
                                    std::to_string(g.in_edges(v).size()) + ", '" +
                                    g.vertex_id(0) + "' has " + std::to_string(d) + ")");
    if (d == 0) throw PreconditionError("coloring: in-degree 0");
    return d;
}

inline void require_small_for_bitsets(const MultiGraph& g, const char* op) {
    if (g.vertex_count() > 64)
        throw PreconditionError(std::string(op) +
                                ": image-set search supports at most 64 vertices, got " +
                                std::to_string(g.vertex_count()));
}

}  // namespace detail

/// A strong edge coloring of an in-degree d-regular graph: colors {1,...,d},
/// bijective on every in-neighborhood.  Immutable.
class StrongColoring {
public:
    static StrongColoring create(std::shared_ptr<const MultiGraph> g,
                                 const std::unordered_map<std::string, int>& color_of) {
        if (!g) throw PreconditionError("StrongColoring: null graph");
        int d = detail::regular_in_degree(*g);
        std::vector<int> colors(static_cast<std::size_t>(g->edge_count()), 0);
        for (const auto& [eid, col] : color_of) {
            if (!g->has_edge(eid))
                throw SchemaError("coloring: unknown edge '" + eid + "'");
            if (col < 1 || col > d)
                throw SchemaError("coloring: edge '" + eid + "' has color " +
                                  std::to_string(col) + " outside {1,...," + std::to_string(d) +
                                  "}");
            colors[static_cast<std::size_t>(g->edge_index(eid))] = col;
        }
        for (int e = 0; e < g->edge_count(); ++e)
            if (colors[static_cast<std::size_t>(e)] == 0)
                throw SchemaError("coloring: edge '" + g->edge(e).id + "' has no color");
        return StrongColoring(std::move(g), d, std::move(colors));
    }

    const MultiGraph& graph() const { return *g_; }
    const std::shared_ptr<const MultiGraph>& graph_ptr() const { return g_; }
    int num_colors() const { return d_; }

    int color_at(int edge_index) const { return colors_[static_cast<std::size_t>(edge_index)]; }
    int color_of(const std::string& edge_id) const { return color_at(g_->edge_index(edge_id)); }

    /// The unique in-edge of vertex `v` (index) carrying `color`.
    int back_edge(int v, int color) const {
        if (color < 1 || color > d_)
            throw PreconditionError("color " + std::to_string(color) + " outside {1,...," +
                                    std::to_string(d_) + "}");
        return back_[static_cast<std::size_t>(v) * static_cast<std::size_t>(d_) +
                     static_cast<std::size_t>(color - 1)];
    }

private:
    friend class StrongColoringEnumerator;

    StrongColoring(std::shared_ptr<const MultiGraph> g, int d, std::vector<int> colors)
        : g_(std::move(g)), d_(d), colors_(std::move(colors)) {
        back_.assign(static_cast<std::size_t>(g_->vertex_count()) * static_cast<std::size_t>(d_),
                     -1);
        for (int v = 0; v < g_->vertex_count(); ++v) {
            for (int e : g_->in_edges(v)) {
                int col = colors_[static_cast<std::size_t>(e)];
                auto& slot = back_[static_cast<std::size_t>(v) * static_cast<std::size_t>(d_) +
                                   static_cast<std::size_t>(col - 1)];
                if (slot != -1)
                    throw SchemaError("coloring: in-edges '" + g_->edge(slot).id + "' and '" +
                                      g_->edge(e).id + "' of vertex '" + g_->vertex_id(v) +
                                      "' share color " + std::to_string(col));
                slot = e;
            }
        }
    }

    std::shared_ptr<const MultiGraph> g_;
    int d_;
    std::vector<int> colors_;  // by edge index
    std::vector<int> back_;    // [v * d + (color-1)] -> edge index
};

/// Back-tracked path: the unique path with range v whose colors spell w.
inline Path backtrack(const StrongColoring& c, const std::string& v, const ColorWord& w) {
    int cur = c.graph().vertex_index(v);
    if (w.empty()) return Path::at_vertex(v);
    std::vector<std::string> ids;
    ids.reserve(w.size());
    for (int letter : w) {
        int e = c.back_edge(cur, letter);
        ids.push_back(c.graph().edge(e).id);
        cur = c.graph().edge_src(e);
    }
    return Path::of_edges(std::move(ids));
}

/// The word action v . w, i.e. the source of the back-tracked path.
inline std::string act(const StrongColoring& c, const std::string& v, const ColorWord& w) {
    int cur = c.graph().vertex_index(v);
    for (int letter : w) cur = c.graph().edge_src(c.back_edge(cur, letter));
    return c.graph().vertex_id(cur);
}

/// Colors of a path, in operator order.
inline ColorWord colors_of(const StrongColoring& c, const Path& p) {
    validate_path(c.graph(), p);
    ColorWord w;
    for (const auto& eid : p.edge_ids()) w.push_back(c.color_of(eid));
    return w;
}

/// Elementwise action on a vertex set; the result is deduplicated and in
/// document order.
inline std::vector<std::string> image(const StrongColoring& c, const std::vector<std::string>& I,
                                      const ColorWord& w) {
    const MultiGraph& g = c.graph();
    std::vector<char> cur(static_cast<std::size_t>(g.vertex_count()), 0);
    for (const auto& id : I) cur[static_cast<std::size_t>(g.vertex_index(id))] = 1;
    for (int letter : w) {
        std::vector<char> next(cur.size(), 0);
        for (int v = 0; v < g.vertex_count(); ++v)
            if (cur[static_cast<std::size_t>(v)])
                next[static_cast<std::size_t>(g.edge_src(c.back_edge(v, letter)))] = 1;
        cur.swap(next);
    }
    std::vector<std::string> out;
    for (int v = 0; v < g.vertex_count(); ++v)
        if (cur[static_cast<std::size_t>(v)]) out.push_back(g.vertex_id(v));
    return out;
}

struct SearchBudget {
    std::uint64_t coloring_cap = 1'000'000;
    std::uint64_t bfs_cap = 1'000'000;
};

struct RankResult {
    int rank = 0;
    ColorWord witness;  // length-lex first word whose image attains the rank
};

namespace detail {

/// step[color-1][v] = index of the vertex one backward step away.
inline std::vector<std::vector<int>> backstep_table(const StrongColoring& c) {
    const MultiGraph& g = c.graph();
    std::vector<std::vector<int>> step(
        static_cast<std::size_t>(c.num_colors()),
        std::vector<int>(static_cast<std::size_t>(g.vertex_count())));
    for (int v = 0; v < g.vertex_count(); ++v)
        for (int a = 1; a <= c.num_colors(); ++a)
            step[static_cast<std::size_t>(a - 1)][static_cast<std::size_t>(v)] =
                g.edge_src(c.back_edge(v, a));
    return step;
}

inline std::uint64_t apply_backstep(const std::vector<int>& stepa, std::uint64_t s) {
    std::uint64_t t = 0;
    while (s) {
        int v = std::countr_zero(s);
        s &= s - 1;
        t |= std::uint64_t{1} << stepa[static_cast<std::size_t>(v)];
    }
    return t;
}

}  // namespace detail

/// Size of a minimal image V . w over all words, with a witness word.  The
/// search is an exhaustive BFS over the reachable image sets starting from
/// the full vertex set (the empty word counts), so minimality needs no
/// theory input.  Throws BudgetError past `bfs_cap` distinct image sets.
inline RankResult rank(const StrongColoring& c, std::uint64_t bfs_cap = 1'000'000) {
    const MultiGraph& g = c.graph();
    if (!is_transitive(g)) throw PreconditionError("rank: graph is not transitive");
    detail::require_small_for_bitsets(g, "rank");
    int n = g.vertex_count();
    auto step = detail::backstep_table(c);

    std::uint64_t full =
        (n == 64) ? ~std::uint64_t{0} : ((std::uint64_t{1} << n) - 1);
    // parent[s] = (previous set, letter); the root keeps letter 0
    std::unordered_map<std::uint64_t, std::pair<std::uint64_t, int>> parent;
    std::deque<std::uint64_t> queue;
    parent.emplace(full, std::make_pair(full, 0));
    queue.push_back(full);
    std::uint64_t best_set = full;
    int best_size = n;
    std::uint64_t visited = 1;
    while (!queue.empty()) {
        std::uint64_t s = queue.front();
        queue.pop_front();
        for (int a = 1; a <= c.num_colors(); ++a) {
            std::uint64_t t = detail::apply_backstep(step[static_cast<std::size_t>(a - 1)], s);
            if (!parent.emplace(t, std::make_pair(s, a)).second) continue;
            if (++visited > bfs_cap)
                throw BudgetError("rank: image-set search exceeded budget of " +
                                  std::to_string(bfs_cap) + " sets");
            int size = std::popcount(t);
            if (size < best_size) {
                best_size = size;
                best_set = t;
            }
            queue.push_back(t);
        }
    }
    RankResult out;
    out.rank = best_size;
    std::uint64_t s = best_set;
    while (true) {
        auto [prev, letter] = parent.at(s);
        if (letter == 0) break;
        out.witness.push_back(letter);
        s = prev;
    }
    std::reverse(out.witness.begin(), out.witness.end());
    return out;
}

/// Witness that a coloring is p-synchronizing: `word` maps every vertex of
/// cyclic class i to targets[i], and |word| is a multiple of p = rank.
struct SyncCertificate {
    ColorWord word;
    std::vector<std::string> targets;  // indexed by cyclic class
    int rank = 0;
};

/// Re-checks a certificate against the coloring from scratch.
inline void verify_certificate(const StrongColoring& c, const SyncCertificate& cert) {
    const MultiGraph& g = c.graph();
    CyclicDecomposition dec = cyclic_decomposition(g);
    contract_check(static_cast<int>(cert.targets.size()) == dec.period,
                   "certificate: target count != period");
    contract_check(cert.rank == dec.period, "certificate: rank != period");
    contract_check(cert.word.size() % static_cast<std::size_t>(dec.period) == 0,
                   "certificate: word length not divisible by the period");
    for (int i = 0; i < dec.period; ++i)
        contract_check(dec.class_of.at(cert.targets[static_cast<std::size_t>(i)]) == i,
                       "certificate: target " + std::to_string(i) + " is in the wrong class");
    for (int v = 0; v < g.vertex_count(); ++v) {
        const std::string& id = g.vertex_id(v);
        contract_check(
            act(c, id, cert.word) ==
                cert.targets[static_cast<std::size_t>(dec.class_of.at(id))],
            "certificate: vertex '" + id + "' does not reach its class target");
    }
}

/// Search for a word collapsing every cyclic class to a single vertex.  BFS
/// runs over tuples of per-class image sets; the first all-singleton state
/// wins and its word is padded with color 1 to a multiple of p.  Returns
/// nullopt when the reachable tuple space holds no such state.
inline std::optional<SyncCertificate> is_p_synchronizing(const StrongColoring& c,
                                                         std::uint64_t bfs_cap = 1'000'000) {
    const MultiGraph& g = c.graph();
    if (!is_transitive(g))
        throw PreconditionError("is_p_synchronizing: graph is not transitive");
    detail::require_small_for_bitsets(g, "is_p_synchronizing");
    CyclicDecomposition dec = cyclic_decomposition(g);
    int p = dec.period;
    auto step = detail::backstep_table(c);

    using State = std::vector<std::uint64_t>;  // per original class
    struct StateHash {
        std::size_t operator()(const State& s) const {
            std::size_t h = 0xcbf29ce484222325ull;
            for (std::uint64_t x : s) {
                h ^= static_cast<std::size_t>(x);
                h *= 0x100000001b3ull;
            }
            return h;
        }
    };

    State init(static_cast<std::size_t>(p), 0);
    for (int v = 0; v < g.vertex_count(); ++v)
        init[static_cast<std::size_t>(dec.class_of.at(g.vertex_id(v)))] |= std::uint64_t{1} << v;

    auto all_singleton = [&](const State& s) {
        for (std::uint64_t x : s)
            if (std::popcount(x) != 1) return false;
        return true;
    };

    std::vector<State> states{init};
    std::vector<std::pair<int, int>> parent{{-1, 0}};  // (state index, letter)
    std::unordered_map<State, int, StateHash> index_of{{init, 0}};
    int goal = all_singleton(init) ? 0 : -1;
    std::deque<int> queue{0};
    while (goal < 0 && !queue.empty()) {
        int si = queue.front();
        queue.pop_front();
        for (int a = 1; a <= c.num_colors() && goal < 0; ++a) {
            State next(static_cast<std::size_t>(p));
            for (int i = 0; i < p; ++i)
                next[static_cast<std::size_t>(i)] = detail::apply_backstep(
                    step[static_cast<std::size_t>(a - 1)],
                    states[static_cast<std::size_t>(si)][static_cast<std::size_t>(i)]);
            auto [it, fresh] = index_of.emplace(next, static_cast<int>(states.size()));
            if (!fresh) continue;
            if (static_cast<std::uint64_t>(states.size()) + 1 > bfs_cap)
                throw BudgetError("is_p_synchronizing: tuple search exceeded budget of " +
                                  std::to_string(bfs_cap) + " states");
            states.push_back(std::move(next));
            parent.emplace_back(si, a);
            if (all_singleton(states.back())) goal = it->second;
            queue.push_back(it->second);
        }
    }
    if (goal < 0) return std::nullopt;

    SyncCertificate cert;
    for (int si = goal; parent[static_cast<std::size_t>(si)].first >= 0;
         si = parent[static_cast<std::size_t>(si)].first)
        cert.word.push_back(parent[static_cast<std::size_t>(si)].second);
    std::reverse(cert.word.begin(), cert.word.end());
    while (cert.word.size() % static_cast<std::size_t>(p) != 0) cert.word.push_back(1);

    std::vector<std::string> first_of_class(static_cast<std::size_t>(p));
    for (int v = 0; v < g.vertex_count(); ++v) {
        auto& slot = first_of_class[static_cast<std::size_t>(dec.class_of.at(g.vertex_id(v)))];
        if (slot.empty()) slot = g.vertex_id(v);
    }
    for (int i = 0; i < p; ++i)
        cert.targets.push_back(act(c, first_of_class[static_cast<std::size_t>(i)], cert.word));
    cert.rank = p;
    verify_certificate(c, cert);
    return cert;
}

/// Move the distinguished vertex of one class: append the colors of a path
/// from `w` up to the current target, which drags that target back to `w`
/// (and shifts the others along).
inline SyncCertificate retarget_sync_word(const StrongColoring& c, const SyncCertificate& cert,
                                          int class_index, const std::string& w) {
    const MultiGraph& g = c.graph();
    CyclicDecomposition dec = cyclic_decomposition(g);
    if (class_index < 0 || class_index >= dec.period)
        throw PreconditionError("retarget_sync_word: class index " +
                                std::to_string(class_index) + " out of range");
    if (dec.class_of.at(w) != class_index)
        throw PreconditionError("retarget_sync_word: vertex '" + w + "' is in class " +
                                std::to_string(dec.class_of.at(w)) + ", not " +
                                std::to_string(class_index));
    const std::string& target = cert.targets[static_cast<std::size_t>(class_index)];
    Path lambda = find_path(g, w, target);
    ColorWord suffix = colors_of(c, lambda);
    contract_check(suffix.size() % static_cast<std::size_t>(dec.period) == 0,
                   "retarget_sync_word: connecting path length not divisible by the period");
    SyncCertificate out;
    out.word = concat_words(cert.word, suffix);
    for (const auto& t : cert.targets) out.targets.push_back(act(c, t, suffix));
    out.rank = cert.rank;
    contract_check(out.targets[static_cast<std::size_t>(class_index)] == w,
                   "retarget_sync_word: retargeted class missed '" + w + "'");
    verify_certificate(c, out);
    return out;
}

/// All strong edge colorings of an in-degree d-regular graph, addressable by
/// index: vertex k (document order) is the k-th most significant digit, its
/// digit selects a permutation of {1,...,d} (lexicographic) applied to its
/// in-edges in document order.
class StrongColoringEnumerator {
public:
    explicit StrongColoringEnumerator(std::shared_ptr<const MultiGraph> g) : g_(std::move(g)) {
        if (!g_) throw PreconditionError("StrongColoringEnumerator: null graph");
        d_ = detail::regular_in_degree(*g_);
        fact_ = 1;
        for (int k = 2; k <= d_; ++k) fact_ *= static_cast<std::uint64_t>(k);
        count_ = 1;
        overflow_ = false;
        for (int v = 0; v < g_->vertex_count(); ++v) {
            if (count_ > UINT64_MAX / fact_) {
                overflow_ = true;
                count_ = UINT64_MAX;
                break;
            }
            count_ *= fact_;
        }
    }

    std::uint64_t count() const { return count_; }
    bool overflowed() const { return overflow_; }
    int num_colors() const { return d_; }

    StrongColoring at(std::uint64_t index) const {
        if (!overflow_ && index >= count_)
            throw PreconditionError("coloring index " + std::to_string(index) + " out of range");
        const MultiGraph& g = *g_;
        int n = g.vertex_count();
        std::vector<std::uint64_t> digits(static_cast<std::size_t>(n));
        for (int v = n - 1; v >= 0; --v) {
            digits[static_cast<std::size_t>(v)] = index % fact_;
            index /= fact_;
        }
        std::vector<int> colors(static_cast<std::size_t>(g.edge_count()));
        for (int v = 0; v < n; ++v) {
            auto perm = unrank_permutation(digits[static_cast<std::size_t>(v)]);
            const auto& ins = g.in_edges(v);
            for (int k = 0; k < d_; ++k)
                colors[static_cast<std::size_t>(ins[static_cast<std::size_t>(k)])] =
                    perm[static_cast<std::size_t>(k)];
        }
        return StrongColoring(g_, d_, std::move(colors));
    }

private:
    /// k-th permutation of (1,...,d) in lexicographic order.
    std::vector<int> unrank_permutation(std::uint64_t k) const {
        std::vector<int> pool(static_cast<std::size_t>(d_));
        std::iota(pool.begin(), pool.end(), 1);
        std::vector<int> perm;
        perm.reserve(pool.size());
        std::uint64_t f = fact_;
        for (int left = d_; left > 0; --left) {
            f /= static_cast<std::uint64_t>(left);
            std::size_t pick = static_cast<std::size_t>(k / f);
            k %= f;
            perm.push_back(pool[pick]);
            pool.erase(pool.begin() + static_cast<std::ptrdiff_t>(pick));
        }
        return perm;
    }

    std::shared_ptr<const MultiGraph> g_;
    int d_ = 0;
    std::uint64_t fact_ = 1;
    std::uint64_t count_ = 0;
    bool overflow_ = false;
};

struct ColoringSearchResult {
    StrongColoring coloring;
    SyncCertificate certificate;
    std::uint64_t index = 0;
};

/// First coloring (enumeration order) whose rank equals the period, plus its
/// certificate.  Existence is a theorem for transitive in-degree regular
/// graphs, so exhausting the space is an internal error, while exhausting
/// only the cap is a budget error.
inline ColoringSearchResult find_p_synchronizing_coloring(std::shared_ptr<const MultiGraph> g,
                                                          const SearchBudget& budget = {},
                                                          int jobs = 1) {
    if (!g) throw PreconditionError("find_p_synchronizing_coloring: null graph");
    int p = period(*g);
    StrongColoringEnumerator en(g);
    bool capped = en.overflowed() || en.count() > budget.coloring_cap;
    std::uint64_t scan = capped ? budget.coloring_cap : en.count();
    auto hit = parallel_find_first(scan, jobs, [&](std::uint64_t i) {
        return rank(en.at(i), budget.bfs_cap).rank == p;
    });
    if (!hit) {
        if (capped)
            throw BudgetError("color-search: no rank-" + std::to_string(p) +
                              " coloring among the first " + std::to_string(scan) +
                              " colorings (cap)");
        throw ContractViolation(
            "color-search: exhausted all colorings without finding rank = period");
    }
    StrongColoring c = en.at(*hit);
    auto cert = is_p_synchronizing(c, budget.bfs_cap);
    contract_check(cert.has_value(), "color-search: rank-p coloring is not p-synchronizing");
    return {std::move(c), std::move(*cert), *hit};
}

}  // namespace roadlag
