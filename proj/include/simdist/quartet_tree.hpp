#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <queue>
#include <string>
#include <string_view>
#include <unordered_set>
#include <utility>
#include <vector>

#include "simdist/errors.hpp"
#include "simdist/rng.hpp"

namespace simdist {

/// Unrooted tree with n >= 4 labeled leaves of degree 1 and n-2 internal
/// nodes of degree 3 (2n-3 edges). Node ids: leaves are [0, n), internal
/// nodes [n, 2n-2). Immutable; mutations construct new trees.
class QuartetTree {
public:
    QuartetTree(std::vector<std::string> leaf_labels, std::vector<std::pair<int, int>> edges)
        : labels_(std::move(leaf_labels)) {
        const std::size_t n = labels_.size();
        if (n < 4) throw InvalidArgument("tree: need at least 4 leaves");
        adj_.assign(2 * n - 2, {});
        if (edges.size() != 2 * n - 3)
            throw InvalidArgument("tree: expected " + std::to_string(2 * n - 3) + " edges, got " +
                                  std::to_string(edges.size()));
        for (auto [u, v] : edges) {
            if (u < 0 || v < 0 || u >= int(adj_.size()) || v >= int(adj_.size()) || u == v)
                throw InvalidArgument("tree: bad edge");
            adj_[u].push_back(v);
            adj_[v].push_back(u);
        }
        validate();
    }

    std::size_t leaf_count() const { return labels_.size(); }
    std::size_t node_count() const { return adj_.size(); }
    bool is_leaf(int node) const { return node < int(labels_.size()); }
    const std::vector<std::string>& leaf_labels() const { return labels_; }
    const std::vector<int>& neighbors(int node) const { return adj_[node]; }

    int leaf_by_label(std::string_view label) const {
        for (std::size_t i = 0; i < labels_.size(); ++i)
            if (labels_[i] == label) return int(i);
        throw InvalidArgument("tree: no leaf labeled '" + std::string(label) + "'");
    }

    /// Edges as (u, v) with u < v, sorted: a canonical order independent
    /// of construction history.
    std::vector<std::pair<int, int>> edges() const {
        std::vector<std::pair<int, int>> out;
        out.reserve(2 * labels_.size() - 3);
        for (int u = 0; u < int(adj_.size()); ++u)
            for (int v : adj_[u])
                if (u < v) out.emplace_back(u, v);
        std::sort(out.begin(), out.end());
        return out;
    }

    /// Hop counts from `from` to every node (unit edge lengths).
    std::vector<int> distances_from(int from) const {
        std::vector<int> dist(adj_.size(), -1);
        std::queue<int> q;
        dist[from] = 0;
        q.push(from);
        while (!q.empty()) {
            const int u = q.front();
            q.pop();
            for (int v : adj_[u])
                if (dist[v] < 0) {
                    dist[v] = dist[u] + 1;
                    q.push(v);
                }
        }
        return dist;
    }

private:
    void validate() const {
        const std::size_t n = labels_.size();
        std::unordered_set<std::string_view> seen;
        for (const auto& l : labels_)
            if (l.empty() || !seen.insert(l).second)
                throw InvalidArgument("tree: empty or duplicate leaf label '" + l + "'");
        for (std::size_t node = 0; node < adj_.size(); ++node) {
            const std::size_t want = node < n ? 1 : 3;
            if (adj_[node].size() != want)
                throw InvalidArgument("tree: node " + std::to_string(node) + " has degree " +
                                      std::to_string(adj_[node].size()) + ", expected " +
                                      std::to_string(want));
        }
        const auto dist = distances_from(0);
        for (int d : dist)
            if (d < 0) throw InvalidArgument("tree: not connected");
        // Degree profile + connectivity + edge count imply acyclicity.
    }

    std::vector<std::string> labels_;
    std::vector<std::vector<int>> adj_;
};

/// One of the three pairings of four leaves. Labels are kept sorted;
/// the pairing names which partner the smallest label takes.
enum class Pairing {
    AB_CD, // {a,b} | {c,d}
    AC_BD, // {a,c} | {b,d}
    AD_BC  // {a,d} | {b,c}
};

struct QuartetTopology {
    std::array<std::string, 4> labels; // sorted ascending
    Pairing pairing;
};

/// The unique pairing whose two leaf paths are edge-disjoint in the
/// tree. With unit branch lengths the induced pairing has strictly
/// smaller path-length sum than the other two (which are equal).
inline QuartetTopology induced_topology(const QuartetTree& tree,
                                        std::array<std::string, 4> quartet) {
    std::sort(quartet.begin(), quartet.end());
    for (int i = 0; i < 3; ++i)
        if (quartet[i] == quartet[i + 1])
            throw InvalidArgument("induced_topology: quartet labels must be distinct");
    std::array<int, 4> leaf{};
    for (int i = 0; i < 4; ++i) leaf[i] = tree.leaf_by_label(quartet[i]);

    const auto da = tree.distances_from(leaf[0]);
    const auto db = tree.distances_from(leaf[1]);
    const int s_ab_cd = da[leaf[1]] + tree.distances_from(leaf[2])[leaf[3]];
    const int s_ac_bd = da[leaf[2]] + db[leaf[3]];
    const int s_ad_bc = da[leaf[3]] + db[leaf[2]];

    Pairing p = Pairing::AB_CD;
    int best = s_ab_cd;
    if (s_ac_bd < best) {
        best = s_ac_bd;
        p = Pairing::AC_BD;
    }
    if (s_ad_bc < best) p = Pairing::AD_BC;
    return {quartet, p};
}

/// Uniformly random labeled topology via sequential random edge
/// insertion; a fixed seed stream yields an identical tree.
inline QuartetTree random_tree(const std::vector<std::string>& labels, std::mt19937_64& rng) {
    const int n = int(labels.size());
    if (n < 4) throw InvalidArgument("random_tree: need at least 4 leaves");
    std::vector<std::pair<int, int>> edges = {{0, n}, {1, n}, {2, n}};
    int next_internal = n + 1;
    for (int leaf = 3; leaf < n; ++leaf) {
        const std::size_t idx = uniform_below(rng, edges.size());
        const auto [u, v] = edges[idx];
        const int w = next_internal++;
        edges[idx] = {u, w};
        edges.emplace_back(w, v);
        edges.emplace_back(w, leaf);
    }
    return QuartetTree(labels, edges);
}

inline QuartetTree random_tree(const std::vector<std::string>& labels, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    return random_tree(labels, rng);
}

namespace detail {

inline std::vector<std::vector<int>> adjacency_of(const std::vector<std::pair<int, int>>& edges,
                                                  std::size_t nodes) {
    std::vector<std::vector<int>> adj(nodes);
    for (auto [u, v] : edges) {
        adj[u].push_back(v);
        adj[v].push_back(u);
    }
    return adj;
}

inline void erase_edge(std::vector<std::pair<int, int>>& edges, int u, int v) {
    const auto key = u < v ? std::make_pair(u, v) : std::make_pair(v, u);
    const auto it = std::find(edges.begin(), edges.end(), key);
    if (it == edges.end()) throw InvalidArgument("mutate: internal edge bookkeeping error");
    edges.erase(it);
}

inline void add_edge(std::vector<std::pair<int, int>>& edges, int u, int v) {
    edges.emplace_back(std::min(u, v), std::max(u, v));
}

} // namespace detail

/// One random tree move: leaf label swap, nearest-neighbor interchange
/// on an internal edge, or subtree detach-and-reattach. The result is a
/// valid tree over the same leaf label multiset.
inline QuartetTree mutate(const QuartetTree& tree, std::mt19937_64& rng) {
    const int n = int(tree.leaf_count());
    auto labels = tree.leaf_labels();
    auto edges = tree.edges(); // canonical order, so sampling is reproducible

    const auto kind = uniform_below(rng, 3);
    if (kind == 0) { // leaf label swap
        const std::size_t i = uniform_below(rng, n);
        std::size_t j = uniform_below(rng, n - 1);
        if (j >= i) ++j;
        std::swap(labels[i], labels[j]);
        return QuartetTree(std::move(labels), std::move(edges));
    }

    auto adj = detail::adjacency_of(edges, tree.node_count());
    auto others = [&](int node, int excluded) {
        std::array<int, 2> out{};
        int k = 0;
        for (int w : adj[node])
            if (w != excluded) out[std::size_t(k++)] = w;
        return out;
    };

    if (kind == 1) { // nearest-neighbor interchange
        std::vector<std::pair<int, int>> internal;
        for (auto [u, v] : edges)
            if (!tree.is_leaf(u) && !tree.is_leaf(v)) internal.emplace_back(u, v);
        const auto [u, v] = internal[uniform_below(rng, internal.size())];
        const auto uo = others(u, v);
        const auto vo = others(v, u);
        const int b = uo[1];
        const int c = vo[uniform_below(rng, 2)];
        detail::erase_edge(edges, u, b);
        detail::erase_edge(edges, v, c);
        detail::add_edge(edges, u, c);
        detail::add_edge(edges, v, b);
        return QuartetTree(std::move(labels), std::move(edges));
    }

    // Subtree detach-and-reattach: pull the subtree behind edge (a, s)
    // off the tree (suppressing a), then splice it into another edge.
    std::vector<std::pair<int, int>> directed;
    for (auto [u, v] : edges) {
        if (!tree.is_leaf(u)) directed.emplace_back(u, v);
        if (!tree.is_leaf(v)) directed.emplace_back(v, u);
    }
    const auto [a, s] = directed[uniform_below(rng, directed.size())];

    // Nodes on the s side of edge (a, s).
    std::vector<char> in_subtree(tree.node_count(), 0);
    {
        std::vector<int> stack = {s};
        in_subtree[s] = 1;
        while (!stack.empty()) {
            const int u = stack.back();
            stack.pop_back();
            for (int w : adj[u])
                if (!(u == s && w == a) && !in_subtree[w]) {
                    in_subtree[w] = 1;
                    stack.push_back(w);
                }
        }
    }
    const auto pq = others(a, s);
    detail::erase_edge(edges, a, s);
    detail::erase_edge(edges, a, pq[0]);
    detail::erase_edge(edges, a, pq[1]);
    detail::add_edge(edges, pq[0], pq[1]);

    std::vector<std::pair<int, int>> host_edges;
    for (auto [u, v] : edges)
        if (!in_subtree[u] && !in_subtree[v]) host_edges.emplace_back(u, v);
    std::sort(host_edges.begin(), host_edges.end());
    const auto [x, y] = host_edges[uniform_below(rng, host_edges.size())];
    detail::erase_edge(edges, x, y);
    detail::add_edge(edges, x, a);
    detail::add_edge(edges, a, y);
    detail::add_edge(edges, a, s);
    return QuartetTree(std::move(labels), std::move(edges));
}

inline QuartetTree mutate(const QuartetTree& tree, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    return mutate(tree, rng);
}

/// Invokes f on every unrooted binary topology over the labels
/// ((2n-5)!! of them). Guarded to n <= 8.
template <typename F>
void enumerate_trees(const std::vector<std::string>& labels, F&& f) {
    const int n = int(labels.size());
    if (n < 4) throw InvalidArgument("enumerate_trees: need at least 4 leaves");
    if (n > 8)
        throw InvalidArgument("enumerate_trees: n = " + std::to_string(n) +
                              " exceeds the exhaustive-search guard (n <= 8)");
    std::vector<std::pair<int, int>> edges = {{0, n}, {1, n}, {2, n}};
    auto rec = [&](auto&& self, int next_leaf, int next_internal) -> void {
        if (next_leaf == n) {
            f(QuartetTree(labels, edges));
            return;
        }
        const std::size_t count = edges.size();
        for (std::size_t i = 0; i < count; ++i) {
            const auto [u, v] = edges[i];
            const int w = next_internal;
            edges[i] = {u, w};
            edges.emplace_back(w, v);
            edges.emplace_back(w, next_leaf);
            self(self, next_leaf + 1, next_internal + 1);
            edges.pop_back();
            edges.pop_back();
            edges[i] = {u, v};
        }
    };
    rec(rec, 3, n + 1);
}

} // namespace simdist
