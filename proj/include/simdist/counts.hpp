#pragma once

#include <charconv>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "simdist/errors.hpp"
#include "simdist/text_norm.hpp"

namespace simdist {

/// Supplies the counts behind the name-based distance: singleton
/// frequency f(x), doubleton frequency f(x,y), total page count M and,
/// when measured, the singleton-plus-doubleton normalizer N.
///
/// Contract: joint_freq is symmetric, joint_freq(x,x) = freq(x), unknown
/// terms count 0 (not an error), and every query on a degenerate
/// provider (M = 0) throws. Implementations are immutable; queries are
/// safe concurrently.
class CountProvider {
public:
    virtual ~CountProvider() = default;

    virtual std::uint64_t freq(std::string_view term) const = 0;
    virtual std::uint64_t joint_freq(std::string_view a, std::string_view b) const = 0;
    virtual std::uint64_t page_total() const = 0; // M

    /// Exact or declared N; nullopt when the provider only knows M.
    virtual std::optional<std::uint64_t> known_n() const = 0;
};

/// N with the default fallback N := M applied.
inline std::uint64_t normalizer(const CountProvider& p) {
    return p.known_n().value_or(p.page_total());
}

/// g(x) = f(x)/N, the term's mass under the normalized event
/// distribution. Requires a measured or declared N; the caller opts into
/// the N := M fallback explicitly via the override.
inline double g_mass(const CountProvider& p, std::string_view x) {
    const auto n = p.known_n();
    if (!n)
        throw InvalidArgument(
            "g_mass: provider has no exact N; pass --normalizer M (the N:=M fallback) "
            "or supply an explicit normalizer value");
    return double(p.freq(x)) / double(*n);
}

inline double g_mass(const CountProvider& p, std::string_view x, std::string_view y) {
    const auto n = p.known_n();
    if (!n)
        throw InvalidArgument(
            "g_mass: provider has no exact N; pass --normalizer M (the N:=M fallback) "
            "or supply an explicit normalizer value");
    return double(p.joint_freq(x, y)) / double(*n);
}

inline double g_mass_with_n(const CountProvider& p, std::string_view x, std::uint64_t n) {
    if (n == 0) throw InvalidArgument("g_mass: normalizer must be >= 1");
    return double(p.freq(x)) / double(n);
}

/// Static, validated term/pair counts standing in for a live index.
///
/// File format (versioned, line oriented, UTF-8, LF):
///   simdist-counts v1 M=<int> N=<int|same-as-M>
///   t <term> <count>          (sorted by term, counts >= 1)
///   p <termA> <termB> <count> (termA < termB lexicographically, sorted)
/// Round-trips bit-exactly: save(load(f)) == f.
class CountSnapshot final : public CountProvider {
public:
    CountSnapshot(std::uint64_t m, std::optional<std::uint64_t> declared_n,
                  std::map<std::string, std::uint64_t> terms,
                  std::map<std::pair<std::string, std::string>, std::uint64_t> pairs)
        : m_(m), declared_n_(declared_n), terms_(std::move(terms)), pairs_(std::move(pairs)) {
        validate();
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

    std::optional<std::uint64_t> known_n() const override { return declared_n_; }

    std::size_t term_count() const { return terms_.size(); }
    std::size_t pair_count() const { return pairs_.size(); }
    std::uint64_t m_raw() const { return m_; }

    const std::map<std::string, std::uint64_t>& terms() const { return terms_; }
    const std::map<std::pair<std::string, std::string>, std::uint64_t>& pairs() const {
        return pairs_;
    }

    std::string serialize() const {
        std::string out = "simdist-counts v1 M=" + std::to_string(m_) + " N=";
        out += declared_n_ ? std::to_string(*declared_n_) : std::string("same-as-M");
        out += '\n';
        for (const auto& [term, count] : terms_)
            out += "t " + term + ' ' + std::to_string(count) + '\n';
        for (const auto& [key, count] : pairs_)
            out += "p " + key.first + ' ' + key.second + ' ' + std::to_string(count) + '\n';
        return out;
    }

    static CountSnapshot parse(std::string_view text) {
        std::vector<std::string_view> lines;
        std::size_t start = 0;
        for (std::size_t i = 0; i <= text.size(); ++i) {
            if (i == text.size() || text[i] == '\n') {
                std::string_view line = text.substr(start, i - start);
                if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
                if (!line.empty()) lines.push_back(line);
                start = i + 1;
            }
        }
        if (lines.empty()) throw FormatError("counts: empty file");

        std::uint64_t m = 0;
        std::optional<std::uint64_t> declared_n;
        {
            constexpr std::string_view prefix = "simdist-counts v1 M=";
            std::string_view h = lines[0];
            if (h.substr(0, prefix.size()) != prefix)
                throw FormatError("counts: missing 'simdist-counts v1' header");
            h.remove_prefix(prefix.size());
            const auto sp = h.find(' ');
            if (sp == std::string_view::npos || h.substr(sp + 1, 2) != "N=")
                throw FormatError("counts: header must carry 'M=<int> N=<...>'");
            m = parse_u64(h.substr(0, sp), "M");
            const std::string_view nfield = h.substr(sp + 3);
            if (nfield != "same-as-M") declared_n = parse_u64(nfield, "N");
        }

        std::map<std::string, std::uint64_t> terms;
        std::map<std::pair<std::string, std::string>, std::uint64_t> pairs;
        bool in_pairs = false;
        std::string prev_term;
        std::pair<std::string, std::string> prev_pair;
        for (std::size_t li = 1; li < lines.size(); ++li) {
            const auto fields = split_ws(lines[li]);
            if (fields.size() == 3 && fields[0] == "t") {
                if (in_pairs) throw FormatError("counts: 't' line after 'p' lines");
                std::string term(fields[1]);
                if (!is_normalized_term(term))
                    throw FormatError("counts: term '" + term + "' is not a normalized token");
                if (!terms.empty() && !(prev_term < term))
                    throw FormatError("counts: term lines not strictly sorted at '" + term + "'");
                terms.emplace(term, parse_u64(fields[2], "term count"));
                prev_term = std::move(term);
            } else if (fields.size() == 4 && fields[0] == "p") {
                std::string a(fields[1]), b(fields[2]);
                if (!is_normalized_term(a) || !is_normalized_term(b))
                    throw FormatError("counts: pair terms must be normalized tokens");
                if (!(a < b))
                    throw FormatError("counts: pair (" + a + ", " + b +
                                      ") violates termA < termB ordering");
                auto key = std::make_pair(std::move(a), std::move(b));
                if (in_pairs && !(prev_pair < key))
                    throw FormatError("counts: pair lines not strictly sorted at (" +
                                      key.first + ", " + key.second + ")");
                pairs.emplace(key, parse_u64(fields[3], "pair count"));
                prev_pair = std::move(key);
                in_pairs = true;
            } else {
                throw FormatError("counts: bad line '" + std::string(lines[li]) + "'");
            }
        }
        return CountSnapshot(m, declared_n, std::move(terms), std::move(pairs));
    }

private:
    static std::uint64_t parse_u64(std::string_view s, const char* what) {
        std::uint64_t v = 0;
        const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
        if (ec != std::errc() || ptr != s.data() + s.size())
            throw FormatError(std::string("counts: bad ") + what + " '" + std::string(s) + "'");
        return v;
    }

    static std::vector<std::string_view> split_ws(std::string_view line) {
        std::vector<std::string_view> out;
        std::size_t i = 0;
        while (i < line.size()) {
            while (i < line.size() && line[i] == ' ') ++i;
            std::size_t j = i;
            while (j < line.size() && line[j] != ' ') ++j;
            if (j > i) out.push_back(line.substr(i, j - i));
            i = j;
        }
        return out;
    }

    void require_live() const {
        if (m_ == 0)
            throw InvalidArgument("counts: degenerate provider (M = 0) cannot answer queries");
    }

    /// Enforces the cardinality inequalities
    /// 0 <= f(x,y) <= min(f(x), f(y)) <= M and N >= M; violations name
    /// the offending entry.
    void validate() const {
        if (declared_n_ && *declared_n_ < m_)
            throw FormatError("counts: declared N=" + std::to_string(*declared_n_) +
                              " is smaller than M=" + std::to_string(m_));
        for (const auto& [term, count] : terms_) {
            if (count == 0)
                throw FormatError("counts: term '" + term + "' has zero count; omit it instead");
            if (count > m_)
                throw FormatError("counts: f(" + term + ")=" + std::to_string(count) +
                                  " exceeds M=" + std::to_string(m_));
        }
        for (const auto& [key, count] : pairs_) {
            const auto& [a, b] = key;
            if (count == 0)
                throw FormatError("counts: pair (" + a + ", " + b +
                                  ") has zero count; omit it instead");
            const auto fa = terms_.find(a);
            const auto fb = terms_.find(b);
            const std::uint64_t fav = fa == terms_.end() ? 0 : fa->second;
            const std::uint64_t fbv = fb == terms_.end() ? 0 : fb->second;
            if (count > fav || count > fbv)
                throw FormatError("counts: f(" + a + "," + b + ")=" + std::to_string(count) +
                                  " exceeds min(f(" + a + ")=" + std::to_string(fav) + ", f(" +
                                  b + ")=" + std::to_string(fbv) + ")");
        }
    }

    std::uint64_t m_;
    std::optional<std::uint64_t> declared_n_;
    std::map<std::string, std::uint64_t> terms_;
    std::map<std::pair<std::string, std::string>, std::uint64_t> pairs_;
};

} // namespace simdist
