#pragma once

#include <algorithm>
#include <cctype>
#include <string>
#include <string_view>
#include <vector>

#include "simdist/errors.hpp"
#include "simdist/quartet_tree.hpp"

namespace simdist {

namespace detail {

inline bool newick_needs_quotes(std::string_view label) {
    for (char ch : label) {
        const bool safe = (ch >= 'a' && ch <= 'z') || (ch >= 'A' && ch <= 'Z') ||
                          (ch >= '0' && ch <= '9') || ch == '_' || ch == '.' || ch == '-' ||
                          ch == '+';
        if (!safe) return true;
    }
    return label.empty();
}

inline std::string newick_quote(std::string_view label) {
    if (!newick_needs_quotes(label)) return std::string(label);
    std::string out = "'";
    for (char ch : label) {
        out += ch;
        if (ch == '\'') out += '\'';
    }
    out += '\'';
    return out;
}

/// Subtree serialization with children ordered by their own
/// serialization; depends only on the labeled topology.
inline std::string nwk_subtree(const QuartetTree& t, int node, int parent) {
    if (t.is_leaf(node)) return newick_quote(t.leaf_labels()[std::size_t(node)]);
    std::vector<std::string> kids;
    for (int w : t.neighbors(node))
        if (w != parent) kids.push_back(nwk_subtree(t, w, node));
    std::sort(kids.begin(), kids.end());
    std::string out = "(";
    for (std::size_t i = 0; i < kids.size(); ++i) {
        if (i) out += ',';
        out += kids[i];
    }
    out += ')';
    return out;
}

inline int canonical_root(const QuartetTree& t) {
    int best_node = -1;
    std::string best;
    for (int node = int(t.leaf_count()); node < int(t.node_count()); ++node) {
        std::string s = nwk_subtree(t, node, -1);
        if (best_node < 0 || s < best) {
            best = std::move(s);
            best_node = node;
        }
    }
    return best_node;
}

} // namespace detail

/// Canonical Newick form: rooted at the internal node minimizing the
/// serialization, children sorted, no branch lengths. Two trees with the
/// same labeled topology serialize identically, which makes the string
/// usable as a deterministic tie-break key.
inline std::string to_newick(const QuartetTree& t) {
    return detail::nwk_subtree(t, detail::canonical_root(t), -1) + ";";
}

/// Undirected DOT graph; leaves keep their labels, internal nodes are
/// unlabeled points. Node and edge order follow the canonical traversal,
/// so output is deterministic.
inline std::string to_dot(const QuartetTree& t) {
    const int root = detail::canonical_root(t);
    std::string nodes, edges;
    int internal_counter = 0;
    std::vector<std::string> dot_name(t.node_count());

    auto quote = [](std::string_view s) {
        std::string out = "\"";
        for (char ch : s) {
            if (ch == '"' || ch == '\\') out += '\\';
            out += ch;
        }
        out += '"';
        return out;
    };

    auto rec = [&](auto&& self, int node, int parent) -> void {
        if (t.is_leaf(node)) {
            dot_name[std::size_t(node)] = "leaf" + std::to_string(node);
            nodes += "  " + dot_name[std::size_t(node)] + " [shape=box, label=" +
                     quote(t.leaf_labels()[std::size_t(node)]) + "];\n";
        } else {
            dot_name[std::size_t(node)] = "i" + std::to_string(internal_counter++);
            nodes += "  " + dot_name[std::size_t(node)] + " [shape=point];\n";
        }
        if (t.is_leaf(node)) return;
        std::vector<std::pair<std::string, int>> kids;
        for (int w : t.neighbors(node))
            if (w != parent) kids.emplace_back(detail::nwk_subtree(t, w, node), w);
        std::sort(kids.begin(), kids.end());
        for (const auto& [key, w] : kids) {
            self(self, w, node);
            edges += "  " + dot_name[std::size_t(node)] + " -- " + dot_name[std::size_t(w)] +
                     ";\n";
        }
    };
    rec(rec, root, -1);
    return "graph quartet_tree {\n" + nodes + edges + "}\n";
}

namespace detail {

struct NewickParser {
    std::string_view text;
    std::size_t pos = 0;

    void skip_ws() {
        while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
    }

    bool eat(char ch) {
        skip_ws();
        if (pos < text.size() && text[pos] == ch) {
            ++pos;
            return true;
        }
        return false;
    }

    char peek() {
        skip_ws();
        return pos < text.size() ? text[pos] : '\0';
    }

    std::string parse_label() {
        skip_ws();
        if (pos < text.size() && text[pos] == '\'') {
            ++pos;
            std::string out;
            while (pos < text.size()) {
                if (text[pos] == '\'') {
                    if (pos + 1 < text.size() && text[pos + 1] == '\'') {
                        out += '\'';
                        pos += 2;
                    } else {
                        ++pos;
                        return out;
                    }
                } else {
                    out += text[pos++];
                }
            }
            throw FormatError("newick: unterminated quoted label");
        }
        std::string out;
        while (pos < text.size()) {
            const char ch = text[pos];
            if (ch == '(' || ch == ')' || ch == ',' || ch == ';' || ch == ':' ||
                std::isspace(static_cast<unsigned char>(ch)))
                break;
            out += ch;
            ++pos;
        }
        return out;
    }

    void skip_branch_length() {
        if (eat(':')) {
            skip_ws();
            std::size_t start = pos;
            while (pos < text.size() &&
                   (std::isdigit(static_cast<unsigned char>(text[pos])) || text[pos] == '.' ||
                    text[pos] == '-' || text[pos] == '+' || text[pos] == 'e' || text[pos] == 'E'))
                ++pos;
            if (pos == start) throw FormatError("newick: ':' without a branch length");
        }
    }
};

} // namespace detail

/// Parses a Newick tree (branch lengths tolerated and ignored, internal
/// labels rejected) into a QuartetTree. A degree-2 root is suppressed to
/// recover the unrooted topology.
inline QuartetTree parse_newick(std::string_view text) {
    detail::NewickParser p{text};

    std::vector<std::string> labels;
    std::vector<std::pair<int, int>> edges;          // over temp ids
    int next_id = 0;                                 // temp ids, leaves and internals mixed
    std::vector<int> leaf_ids;                       // temp ids that are leaves, label order

    auto rec = [&](auto&& self) -> int {
        if (p.peek() == '(') {
            p.eat('(');
            const int me = next_id++;
            int children = 0;
            for (;;) {
                const int child = self(self);
                edges.emplace_back(me, child);
                ++children;
                if (p.eat(',')) continue;
                if (p.eat(')')) break;
                throw FormatError("newick: expected ',' or ')'");
            }
            if (children < 2) throw FormatError("newick: internal node with fewer than 2 children");
            const std::string label = p.parse_label();
            if (!label.empty())
                throw FormatError("newick: internal node labels are not supported");
            p.skip_branch_length();
            return me;
        }
        const std::string label = p.parse_label();
        if (label.empty()) throw FormatError("newick: missing leaf label");
        p.skip_branch_length();
        const int me = next_id++;
        leaf_ids.push_back(me);
        labels.push_back(label);
        return me;
    };

    const int root = rec(rec);
    if (!p.eat(';')) throw FormatError("newick: missing trailing ';'");
    p.skip_ws();
    if (p.pos != text.size()) throw FormatError("newick: trailing characters");

    // Suppress a degree-2 root (rooted binary input).
    std::vector<int> degree(std::size_t(next_id), 0);
    for (auto [u, v] : edges) {
        ++degree[std::size_t(u)];
        ++degree[std::size_t(v)];
    }
    if (degree[std::size_t(root)] == 2) {
        int a = -1, b = -1;
        std::vector<std::pair<int, int>> kept;
        for (auto [u, v] : edges) {
            if (u == root) {
                (a < 0 ? a : b) = v;
            } else if (v == root) {
                (a < 0 ? a : b) = u;
            } else {
                kept.emplace_back(u, v);
            }
        }
        kept.emplace_back(a, b);
        edges = std::move(kept);
    }

    // Renumber: leaves to [0, n) in encounter order, the rest above.
    std::vector<int> remap(std::size_t(next_id), -1);
    int next_leaf = 0;
    for (int id : leaf_ids) remap[std::size_t(id)] = next_leaf++;
    int next_internal = next_leaf;
    for (int id = 0; id < next_id; ++id) {
        const bool used = std::any_of(edges.begin(), edges.end(),
                                      [&](auto e) { return e.first == id || e.second == id; });
        if (remap[std::size_t(id)] < 0 && used) remap[std::size_t(id)] = next_internal++;
    }
    for (auto& [u, v] : edges) {
        u = remap[std::size_t(u)];
        v = remap[std::size_t(v)];
    }
    return QuartetTree(std::move(labels), std::move(edges)); // validates shape
}

} // namespace simdist
