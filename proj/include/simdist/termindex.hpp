#pragma once

#include <algorithm>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "simdist/counts.hpp"
#include "simdist/errors.hpp"
#include "simdist/text_norm.hpp"

namespace simdist {

struct Document {
    std::string id;
    std::string text;
};

/// Guard for the exact doubleton-sum contract; larger vocabularies fall
/// back to N := M.
inline constexpr std::size_t kDefaultVocabCap = 5000;

/// Result of the exact N computation, N = sum over all singleton events
/// plus all unordered doubleton events. alpha is the measured per-page
/// event maximum, the tightest constant with N <= alpha * M on this
/// corpus.
struct ExactN {
    std::uint64_t value = 0;
    std::uint64_t max_terms_per_page = 0;
    std::uint64_t max_events_per_page = 0; // terms + distinct term pairs on one page
    double alpha = 0.0;
    std::size_t pages_without_terms = 0; // M <= N only holds when this is 0
};

/// Inverted index over a local document collection: the count provider
/// standing in for a web-scale search index. Immutable after ingest; all
/// queries are read-only and safe concurrently.
class TermIndex final : public CountProvider {
public:
    /// Builds the index under the fixed normalization (lowercase, split
    /// on non-alphanumeric). M = number of pages.
    static TermIndex ingest(std::span<const Document> docs) {
        TermIndex idx;
        idx.m_ = docs.size();
        std::unordered_set<std::string_view> ids;
        for (const auto& d : docs)
            if (!ids.insert(d.id).second)
                throw InvalidArgument("ingest: duplicate page id '" + d.id + "'");

        for (std::size_t page = 0; page < docs.size(); ++page) {
            auto terms = tokenize(docs[page].text);
            std::sort(terms.begin(), terms.end());
            terms.erase(std::unique(terms.begin(), terms.end()), terms.end());
            const std::uint64_t t = terms.size();
            // Page-side accumulation of N: a page with t distinct terms
            // lies in t singleton events and t*(t-1)/2 doubleton events.
            const std::uint64_t events = t + t * (t - 1) / 2;
            idx.exact_n_.value += events;
            idx.exact_n_.max_terms_per_page = std::max(idx.exact_n_.max_terms_per_page, t);
            idx.exact_n_.max_events_per_page = std::max(idx.exact_n_.max_events_per_page, events);
            if (t == 0) ++idx.exact_n_.pages_without_terms;
            for (auto& term : terms)
                idx.postings_[std::move(term)].push_back(static_cast<std::uint32_t>(page));
        }
        idx.exact_n_.alpha = double(idx.exact_n_.max_events_per_page);
        return idx;
    }

    std::uint64_t freq(std::string_view term) const override {
        require_live();
        const auto it = postings_.find(std::string(term));
        return it == postings_.end() ? 0 : it->second.size();
    }

    std::uint64_t joint_freq(std::string_view a, std::string_view b) const override {
        require_live();
        if (a == b) return freq(a);
        const auto ia = postings_.find(std::string(a));
        const auto ib = postings_.find(std::string(b));
        if (ia == postings_.end() || ib == postings_.end()) return 0;
        const auto& pa = ia->second;
        const auto& pb = ib->second;
        std::uint64_t count = 0;
        std::size_t i = 0, j = 0;
        while (i < pa.size() && j < pb.size()) {
            if (pa[i] < pb[j]) ++i;
            else if (pb[j] < pa[i]) ++j;
            else { ++count; ++i; ++j; }
        }
        return count;
    }

    std::uint64_t page_total() const override {
        require_live();
        return m_;
    }

    std::optional<std::uint64_t> known_n() const override {
        if (m_ == 0 || postings_.size() > kDefaultVocabCap) return std::nullopt;
        return exact_n_.value;
    }

    /// Exact N with the doubleton-sum vocabulary guard.
    ExactN exact_n(std::size_t vocab_cap = kDefaultVocabCap) const {
        require_live();
        if (postings_.size() > vocab_cap)
            throw InvalidArgument(
                "exact_n: vocabulary size " + std::to_string(postings_.size()) +
                " exceeds cap " + std::to_string(vocab_cap) +
                "; use the N:=M fallback (--normalizer M) instead");
        return exact_n_;
    }

    std::size_t vocab_size() const { return postings_.size(); }
    std::uint64_t page_count() const { return m_; } // raw M, no degeneracy check

    std::vector<std::string> vocabulary() const {
        std::vector<std::string> v;
        v.reserve(postings_.size());
        for (const auto& [term, _] : postings_) v.push_back(term);
        std::sort(v.begin(), v.end());
        return v;
    }

private:
    void require_live() const {
        if (m_ == 0)
            throw InvalidArgument("termindex: degenerate provider (M = 0) cannot answer queries");
    }

    std::uint64_t m_ = 0;
    std::unordered_map<std::string, std::vector<std::uint32_t>> postings_;
    ExactN exact_n_;
};

/// Exports a snapshot of the index: either the full vocabulary (guarded
/// by the cap, the pair enumeration is quadratic) or an explicit term
/// list. Terms absent from the index carry count 0 and are omitted.
inline CountSnapshot export_snapshot(const TermIndex& index,
                                     const std::vector<std::string>* term_list = nullptr,
                                     std::size_t vocab_cap = kDefaultVocabCap) {
    std::vector<std::string> terms;
    if (term_list != nullptr) {
        terms = *term_list;
        std::sort(terms.begin(), terms.end());
        terms.erase(std::unique(terms.begin(), terms.end()), terms.end());
    } else {
        if (index.vocab_size() > vocab_cap)
            throw InvalidArgument("export_snapshot: vocabulary size " +
                                  std::to_string(index.vocab_size()) + " exceeds cap " +
                                  std::to_string(vocab_cap) +
                                  "; pass an explicit term list");
        terms = index.vocabulary();
    }
    std::map<std::string, std::uint64_t> term_counts;
    for (const auto& t : terms) {
        if (!is_normalized_term(t))
            throw InvalidArgument("export_snapshot: '" + t + "' is not a normalized token");
        if (const auto f = index.freq(t); f > 0) term_counts.emplace(t, f);
    }
    std::map<std::pair<std::string, std::string>, std::uint64_t> pair_counts;
    std::vector<std::string> kept;
    kept.reserve(term_counts.size());
    for (const auto& [t, _] : term_counts) kept.push_back(t);
    for (std::size_t i = 0; i < kept.size(); ++i)
        for (std::size_t j = i + 1; j < kept.size(); ++j)
            if (const auto f = index.joint_freq(kept[i], kept[j]); f > 0)
                pair_counts.emplace(std::make_pair(kept[i], kept[j]), f);
    return CountSnapshot(index.page_count(), index.known_n(), std::move(term_counts),
                         std::move(pair_counts));
}

} // namespace simdist
