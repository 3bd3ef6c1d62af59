#pragma once

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "simdist/distance_matrix.hpp"
#include "simdist/errors.hpp"
#include "simdist/parallel.hpp"
#include "simdist/quartet_tree.hpp"
#include "simdist/rng.hpp"
#include "simdist/tree_io.hpp"

namespace simdist {

/// Cost of realizing a pairing: the sum of the two within-pair
/// distances. All six pairwise entries among the four labels must be
/// finite.
inline double quartet_cost(const DistanceMatrix& d, const QuartetTopology& topo) {
    std::array<std::size_t, 4> idx{};
    for (int i = 0; i < 4; ++i) idx[std::size_t(i)] = d.index_of(topo.labels[std::size_t(i)]);
    for (int i = 0; i < 4; ++i)
        for (int j = i + 1; j < 4; ++j)
            if (!std::isfinite(d.at(idx[std::size_t(i)], idx[std::size_t(j)])))
                throw InvalidArgument("quartet_cost: non-finite distance between '" +
                                      topo.labels[std::size_t(i)] + "' and '" +
                                      topo.labels[std::size_t(j)] + "'");
    switch (topo.pairing) {
    case Pairing::AB_CD: return d.at(idx[0], idx[1]) + d.at(idx[2], idx[3]);
    case Pairing::AC_BD: return d.at(idx[0], idx[2]) + d.at(idx[1], idx[3]);
    case Pairing::AD_BC: return d.at(idx[0], idx[3]) + d.at(idx[1], idx[2]);
    }
    throw InvalidArgument("quartet_cost: bad pairing");
}

/// Precomputes per-quartet pairing costs for a matrix, then evaluates
/// trees against them. S(T) = (W - C_T) / (W - m) where m and W sum the
/// minimal and maximal pairing costs and C_T sums the tree-induced ones;
/// all ties (W = m) score 1.
class QuartetScorer {
public:
    explicit QuartetScorer(const DistanceMatrix& d) : labels_(d.labels()), n_(d.size()) {
        if (n_ < 4) throw InvalidArgument("quartet: need at least 4 labels");
        if (!d.all_finite()) {
            std::string msg = "quartet: matrix has non-finite entries touching labels:";
            for (const auto& l : d.labels_with_infinite()) msg += " '" + l + "'";
            throw InvalidArgument(msg);
        }
        if (!d.is_symmetric()) throw InvalidArgument("quartet: matrix is not symmetric");

        for (std::size_t a = 0; a < n_; ++a)
            for (std::size_t b = a + 1; b < n_; ++b)
                for (std::size_t c = b + 1; c < n_; ++c)
                    for (std::size_t e = c + 1; e < n_; ++e) {
                        Quartet q;
                        q.node = {int(a), int(b), int(c), int(e)};
                        q.cost = {d.at(a, b) + d.at(c, e), d.at(a, c) + d.at(b, e),
                                  d.at(a, e) + d.at(b, c)};
                        const double lo = std::min({q.cost[0], q.cost[1], q.cost[2]});
                        const double hi = std::max({q.cost[0], q.cost[1], q.cost[2]});
                        min_sum_ += lo;
                        max_sum_ += hi;
                        quartets_.push_back(q);
                    }
    }

    const std::vector<std::string>& labels() const { return labels_; }
    std::size_t size() const { return n_; }
    double min_sum() const { return min_sum_; }
    double max_sum() const { return max_sum_; }

    /// C_T: the sum of tree-induced pairing costs over all quartets.
    double tree_cost(const QuartetTree& t) const {
        if (t.leaf_count() != n_)
            throw InvalidArgument("quartet: tree and matrix disagree on leaf count");
        // matrix index -> leaf node id, then topological leaf-pair
        // distances; the induced pairing minimizes the path-length sum.
        std::vector<int> leaf_of(n_);
        for (std::size_t i = 0; i < n_; ++i) leaf_of[i] = t.leaf_by_label(labels_[i]);
        std::vector<std::vector<int>> td(n_);
        for (std::size_t i = 0; i < n_; ++i) {
            const auto dist = t.distances_from(leaf_of[i]);
            td[i].resize(n_);
            for (std::size_t j = 0; j < n_; ++j) td[i][j] = dist[std::size_t(leaf_of[j])];
        }
        double total = 0.0;
        for (const auto& q : quartets_) {
            const auto [a, b, c, e] = q.node;
            const int s0 = td[std::size_t(a)][std::size_t(b)] + td[std::size_t(c)][std::size_t(e)];
            const int s1 = td[std::size_t(a)][std::size_t(c)] + td[std::size_t(b)][std::size_t(e)];
            const int s2 = td[std::size_t(a)][std::size_t(e)] + td[std::size_t(b)][std::size_t(c)];
            int pick = 0, best = s0;
            if (s1 < best) { best = s1; pick = 1; }
            if (s2 < best) pick = 2;
            total += q.cost[std::size_t(pick)];
        }
        return total;
    }

    double score_from_cost(double cost) const {
        if (max_sum_ == min_sum_) return 1.0;
        return (max_sum_ - cost) / (max_sum_ - min_sum_);
    }

    double score(const QuartetTree& t) const { return score_from_cost(tree_cost(t)); }

private:
    struct Quartet {
        std::array<int, 4> node;
        std::array<double, 3> cost; // indexed like Pairing
    };

    std::vector<std::string> labels_;
    std::size_t n_;
    std::vector<Quartet> quartets_;
    double min_sum_ = 0.0;
    double max_sum_ = 0.0;
};

/// S(T) for one tree against one matrix.
inline double tree_score(const DistanceMatrix& d, const QuartetTree& t) {
    return QuartetScorer(d).score(t);
}

struct SearchParams {
    int restarts = 10;
    /// Consecutive rejected mutations before a restart stops;
    /// -1 selects the default 1000 * n.
    std::int64_t max_non_improving = -1;
    std::uint64_t seed = 0;
};

struct RestartTrace {
    std::uint64_t derived_seed = 0;
    /// Scores of the initial tree and every accepted mutation, in
    /// order; strictly increasing after the first entry.
    std::vector<double> accepted_scores;
    double best_score = 0.0;
};

struct SearchResult {
    QuartetTree tree;
    double score = 0.0;
    std::vector<RestartTrace> traces;
    double wall_seconds = 0.0;
};

/// Randomized hill climb: restart from random trees, accept a mutation
/// only on strict score improvement, stop a restart after
/// max_non_improving consecutive rejections, return the best tree over
/// all restarts. Restarts run independently (possibly in parallel);
/// ties are broken by canonical serialization, so the result depends
/// only on (matrix, params).
inline SearchResult search(const DistanceMatrix& d, const SearchParams& params = {}) {
    const auto t0 = std::chrono::steady_clock::now();
    if (params.restarts < 1) throw InvalidArgument("search: restarts must be >= 1");
    const QuartetScorer scorer(d);
    const std::size_t n = scorer.size();
    const std::int64_t limit =
        params.max_non_improving < 0 ? 1000 * std::int64_t(n) : params.max_non_improving;

    struct RestartResult {
        QuartetTree tree;
        double cost;
        std::string canonical;
        RestartTrace trace;
    };
    std::vector<std::optional<RestartResult>> results(std::size_t(params.restarts));

    parallel_for(std::size_t(params.restarts), [&](std::size_t r) {
        RestartTrace trace;
        trace.derived_seed = derive_seed(params.seed, r);
        std::mt19937_64 rng(trace.derived_seed);
        QuartetTree tree = random_tree(scorer.labels(), rng);
        double cost = scorer.tree_cost(tree);
        trace.accepted_scores.push_back(scorer.score_from_cost(cost));
        std::int64_t rejected = 0;
        while (rejected < limit) {
            QuartetTree cand = mutate(tree, rng);
            const double cand_cost = scorer.tree_cost(cand);
            if (cand_cost < cost) {
                tree = std::move(cand);
                cost = cand_cost;
                trace.accepted_scores.push_back(scorer.score_from_cost(cost));
                rejected = 0;
            } else {
                ++rejected;
            }
        }
        trace.best_score = trace.accepted_scores.back();
        std::string canonical = to_newick(tree);
        results[r] = RestartResult{std::move(tree), cost, std::move(canonical), std::move(trace)};
    });

    std::optional<std::size_t> best;
    for (std::size_t r = 0; r < results.size(); ++r) {
        if (!best) {
            best = r;
            continue;
        }
        const auto& cur = *results[r];
        const auto& champ = *results[*best];
        if (cur.cost < champ.cost ||
            (cur.cost == champ.cost && cur.canonical < champ.canonical))
            best = r;
    }

    SearchResult out{std::move(results[*best]->tree), scorer.score_from_cost(results[*best]->cost),
                     {}, 0.0};
    for (auto& r : results) out.traces.push_back(std::move(r->trace));
    out.wall_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return out;
}

/// Exhaustive maximum of S over all (2n-5)!! topologies; n <= 8. Ties
/// break toward the smaller canonical serialization.
inline std::pair<QuartetTree, double> brute_force_best_tree(const DistanceMatrix& d) {
    const QuartetScorer scorer(d);
    if (scorer.size() > 8)
        throw InvalidArgument("brute_force_best_tree: n = " + std::to_string(scorer.size()) +
                              " exceeds the (2n-5)!! enumeration guard (n <= 8)");
    std::optional<QuartetTree> best;
    double best_cost = 0.0;
    std::string best_canonical;
    enumerate_trees(scorer.labels(), [&](const QuartetTree& t) {
        const double cost = scorer.tree_cost(t);
        if (!best || cost < best_cost) {
            best = t;
            best_cost = cost;
            best_canonical = to_newick(t);
            return;
        }
        if (cost == best_cost) {
            std::string canonical = to_newick(t);
            if (canonical < best_canonical) {
                best = t;
                best_canonical = std::move(canonical);
            }
        }
    });
    return {std::move(*best), scorer.score_from_cost(best_cost)};
}

} // namespace simdist
