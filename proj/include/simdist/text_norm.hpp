#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace simdist {

/// Fixed term normalization: lowercase, split on any non-alphanumeric
/// byte, drop empty tokens. Idempotent: normalizing a normalized term is
/// the identity.
inline std::vector<std::string> tokenize(std::string_view text) {
    std::vector<std::string> out;
    std::string cur;
    for (unsigned char ch : text) {
        const bool alnum = (ch >= '0' && ch <= '9') || (ch >= 'a' && ch <= 'z') ||
                           (ch >= 'A' && ch <= 'Z');
        if (alnum) {
            cur += char(ch >= 'A' && ch <= 'Z' ? ch + ('a' - 'A') : ch);
        } else if (!cur.empty()) {
            out.push_back(std::move(cur));
            cur.clear();
        }
    }
    if (!cur.empty()) out.push_back(std::move(cur));
    return out;
}

/// Normalizes a single query term; nullopt if the input does not reduce
/// to exactly one token.
inline std::optional<std::string> normalize_term(std::string_view raw) {
    auto toks = tokenize(raw);
    if (toks.size() != 1) return std::nullopt;
    return toks[0];
}

inline bool is_normalized_term(std::string_view term) {
    const auto norm = normalize_term(term);
    return norm.has_value() && *norm == term;
}

} // namespace simdist
