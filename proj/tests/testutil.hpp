#pragma once

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <random>
#include <string>
#include <vector>

#include "simdist/blob.hpp"
#include "simdist/counts.hpp"
#include "simdist/errors.hpp"
#include "simdist/rng.hpp"
#include "simdist/termindex.hpp"

namespace testutil {

inline std::filesystem::path data_dir() { return SIMDIST_DATA_DIR; }

inline std::filesystem::path tmp_dir() {
    const std::filesystem::path p = SIMDIST_TEST_TMP;
    std::filesystem::create_directories(p);
    return p;
}

inline std::string read_file(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    if (!in) throw simdist::Error("testutil: cannot open " + p.string());
    return std::string((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
}

inline simdist::Blob load_blob(const std::filesystem::path& p) {
    const std::string text = read_file(p);
    simdist::Blob b;
    b.label = p.filename().string();
    b.bytes.assign(text.begin(), text.end());
    return b;
}

/// All blobs in a directory, sorted by filename.
inline std::vector<simdist::Blob> load_dir(const std::filesystem::path& dir) {
    std::vector<std::filesystem::path> paths;
    for (const auto& e : std::filesystem::directory_iterator(dir))
        if (e.is_regular_file()) paths.push_back(e.path());
    std::sort(paths.begin(), paths.end());
    std::vector<simdist::Blob> out;
    for (const auto& p : paths) out.push_back(load_blob(p));
    return out;
}

inline std::vector<simdist::Document> load_docs(const std::filesystem::path& dir) {
    std::vector<std::filesystem::path> paths;
    for (const auto& e : std::filesystem::directory_iterator(dir))
        if (e.is_regular_file()) paths.push_back(e.path());
    std::sort(paths.begin(), paths.end());
    std::vector<simdist::Document> out;
    for (const auto& p : paths) out.push_back({p.filename().string(), read_file(p)});
    return out;
}

inline std::vector<std::uint8_t> random_bytes(std::size_t n, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::vector<std::uint8_t> out(n);
    for (auto& b : out) b = std::uint8_t(rng() & 0xff);
    return out;
}

/// Deterministic word-salad prose with natural-language-like statistics;
/// the fixture behind the pinned compressor regression values.
inline std::string pseudo_text(std::size_t approx_len, std::uint64_t seed) {
    static const char* words[] = {
        "the",  "of",     "and",   "to",    "in",    "a",     "is",    "that",  "was",
        "he",   "for",    "it",    "with",  "as",    "his",   "on",    "be",    "at",
        "by",   "had",    "not",   "are",   "but",   "from",  "or",    "have",  "an",
        "they", "which",  "one",   "you",   "were",  "her",   "all",   "she",   "there",
        "would", "their", "we",    "him",   "been",  "has",   "when",  "who",   "will",
        "more", "no",     "if",    "out",   "so",    "said",  "what",  "up",    "its",
        "about", "into",  "than",  "them",  "can",   "only",  "other", "new",   "some",
        "could", "time",  "these", "two",   "may",   "then",  "do",    "first", "any",
        "my",   "now",    "such",  "like",  "our",   "over",  "man",   "me",    "even",
        "most", "made",   "after", "also",  "did",   "many",  "before", "must", "through"};
    std::mt19937_64 rng(seed);
    std::string out;
    while (out.size() < approx_len) {
        out += words[simdist::uniform_below(rng, std::size(words))];
        out += (simdist::uniform_below(rng, 12) == 0) ? ".\n" : " ";
    }
    return out;
}

/// Count provider backed by explicit numbers; used to drive the distance
/// formulas from hand-picked or randomized counts in tests.
class FakeCounts final : public simdist::CountProvider {
public:
    FakeCounts(std::uint64_t m, std::optional<std::uint64_t> n = std::nullopt) : m_(m), n_(n) {}

    FakeCounts& set(std::string term, std::uint64_t f) {
        terms_[std::move(term)] = f;
        return *this;
    }
    FakeCounts& set(std::string a, std::string b, std::uint64_t f) {
        if (b < a) std::swap(a, b);
        pairs_[{std::move(a), std::move(b)}] = f;
        return *this;
    }

    std::uint64_t freq(std::string_view term) const override {
        require_live();
        const auto it = terms_.find(std::string(term));
        return it == terms_.end() ? 0 : it->second;
    }
    std::uint64_t joint_freq(std::string_view a, std::string_view b) const override {
        require_live();
        if (a == b) return freq(a);
        auto key = a < b ? std::make_pair(std::string(a), std::string(b))
                         : std::make_pair(std::string(b), std::string(a));
        const auto it = pairs_.find(key);
        return it == pairs_.end() ? 0 : it->second;
    }
    std::uint64_t page_total() const override {
        require_live();
        return m_;
    }
    std::optional<std::uint64_t> known_n() const override { return n_; }

private:
    void require_live() const {
        if (m_ == 0) throw simdist::InvalidArgument("FakeCounts: degenerate provider");
    }

    std::uint64_t m_;
    std::optional<std::uint64_t> n_;
    std::map<std::string, std::uint64_t> terms_;
    std::map<std::pair<std::string, std::string>, std::uint64_t> pairs_;
};

} // namespace testutil
