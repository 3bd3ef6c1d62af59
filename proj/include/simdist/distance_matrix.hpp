#pragma once

#include <charconv>
#include <cmath>
#include <cstdio>
#include <limits>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "simdist/errors.hpp"

namespace simdist {

namespace detail {

/// Decimal rendering used by every matrix format: 9 significant digits,
/// `inf` for +infinity.
inline std::string format_value(double v) {
    if (std::isnan(v)) throw FormatError("matrix: NaN entry cannot be serialized");
    if (std::isinf(v)) {
        if (v < 0) throw FormatError("matrix: -inf entry cannot be serialized");
        return "inf";
    }
    if (v == 0.0) v = 0.0; // normalize -0
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.9g", v);
    return buf;
}

inline double parse_value(std::string_view field) {
    if (field == "inf") return std::numeric_limits<double>::infinity();
    double v = 0;
    const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), v);
    if (ec != std::errc() || ptr != field.data() + field.size() || std::isnan(v))
        throw FormatError("matrix: bad numeric field '" + std::string(field) + "'");
    return v;
}

inline std::vector<std::string_view> split(std::string_view line, char sep) {
    std::vector<std::string_view> out;
    std::size_t start = 0;
    for (std::size_t i = 0; i <= line.size(); ++i) {
        if (i == line.size() || line[i] == sep) {
            out.push_back(line.substr(start, i - start));
            start = i + 1;
        }
    }
    return out;
}

inline std::string json_escape(std::string_view s) {
    std::string out;
    for (char ch : s) {
        switch (ch) {
        case '"': out += "\\\""; break;
        case '\\': out += "\\\\"; break;
        case '\n': out += "\\n"; break;
        case '\r': out += "\\r"; break;
        case '\t': out += "\\t"; break;
        default:
            if (static_cast<unsigned char>(ch) < 0x20) {
                char buf[8];
                std::snprintf(buf, sizeof buf, "\\u%04x", ch);
                out += buf;
            } else {
                out += ch;
            }
        }
    }
    return out;
}

inline std::string csv_escape(std::string_view s) {
    if (s.find_first_of(",\"\n\r") == std::string_view::npos) return std::string(s);
    std::string out = "\"";
    for (char ch : s) {
        out += ch;
        if (ch == '"') out += '"';
    }
    out += '"';
    return out;
}

} // namespace detail

/// Labeled, symmetric-as-stored, non-negative-ish matrix of pairwise
/// distances. Entries may be +infinity (NGD); NCD matrices are always
/// finite.
class DistanceMatrix {
public:
    explicit DistanceMatrix(std::vector<std::string> labels)
        : labels_(std::move(labels)), values_(labels_.size() * labels_.size(), 0.0) {
        if (labels_.size() < 2) throw InvalidArgument("matrix: need at least 2 labels");
        std::unordered_set<std::string_view> seen;
        for (const auto& l : labels_) {
            if (l.empty() || l.find_first_of("\t\n\r") != std::string::npos)
                throw InvalidArgument("matrix: label '" + l + "' is empty or contains tab/newline");
            if (!seen.insert(l).second)
                throw InvalidArgument("matrix: duplicate label '" + l + "'");
        }
    }

    std::size_t size() const { return labels_.size(); }
    const std::vector<std::string>& labels() const { return labels_; }

    double at(std::size_t i, std::size_t j) const { return values_[i * size() + j]; }

    /// Writes both (i,j) and (j,i); the only mutation path, so storage
    /// stays symmetric by construction.
    void set_symmetric(std::size_t i, std::size_t j, double v) {
        values_[i * size() + j] = v;
        values_[j * size() + i] = v;
    }

    bool is_symmetric() const {
        for (std::size_t i = 0; i < size(); ++i)
            for (std::size_t j = i + 1; j < size(); ++j)
                if (at(i, j) != at(j, i)) return false;
        return true;
    }

    bool all_finite() const {
        for (double v : values_)
            if (!std::isfinite(v)) return false;
        return true;
    }

    /// Labels touching at least one non-finite entry.
    std::vector<std::string> labels_with_infinite() const {
        std::vector<bool> hit(size(), false);
        for (std::size_t i = 0; i < size(); ++i)
            for (std::size_t j = 0; j < size(); ++j)
                if (!std::isfinite(at(i, j))) hit[i] = true;
        std::vector<std::string> out;
        for (std::size_t i = 0; i < size(); ++i)
            if (hit[i]) out.push_back(labels_[i]);
        return out;
    }

    DistanceMatrix clamped01() const {
        DistanceMatrix m(*this);
        for (double& v : m.values_) {
            if (v < 0.0) v = 0.0;
            else if (v > 1.0 && std::isfinite(v)) v = 1.0;
        }
        return m;
    }

    std::size_t index_of(std::string_view label) const {
        for (std::size_t i = 0; i < size(); ++i)
            if (labels_[i] == label) return i;
        throw InvalidArgument("matrix: unknown label '" + std::string(label) + "'");
    }

    /// matrix-v1 text format (bit-exact): header line, tab-separated
    /// labels, then n rows of n tab-separated values with 9 significant
    /// digits; `inf` encodes +infinity.
    std::string to_matrix_v1() const {
        std::string out = "simdist-matrix v1 n=" + std::to_string(size()) + "\n";
        for (std::size_t i = 0; i < size(); ++i) {
            if (i) out += '\t';
            out += labels_[i];
        }
        out += '\n';
        for (std::size_t i = 0; i < size(); ++i) {
            for (std::size_t j = 0; j < size(); ++j) {
                if (j) out += '\t';
                out += detail::format_value(at(i, j));
            }
            out += '\n';
        }
        return out;
    }

    std::string to_csv() const {
        std::string out = "label";
        for (const auto& l : labels_) out += "," + detail::csv_escape(l);
        out += '\n';
        for (std::size_t i = 0; i < size(); ++i) {
            out += detail::csv_escape(labels_[i]);
            for (std::size_t j = 0; j < size(); ++j) out += "," + detail::format_value(at(i, j));
            out += '\n';
        }
        return out;
    }

    std::string to_json() const {
        std::string out = "{\n  \"format\": \"simdist-matrix\",\n  \"version\": 1,\n  \"n\": " +
                          std::to_string(size()) + ",\n  \"labels\": [";
        for (std::size_t i = 0; i < size(); ++i) {
            if (i) out += ", ";
            out += '"' + detail::json_escape(labels_[i]) + '"';
        }
        out += "],\n  \"rows\": [\n";
        for (std::size_t i = 0; i < size(); ++i) {
            out += "    [";
            for (std::size_t j = 0; j < size(); ++j) {
                if (j) out += ", ";
                const double v = at(i, j);
                // JSON has no infinity literal; use the same string the
                // text format uses.
                out += std::isinf(v) ? std::string("\"inf\"") : detail::format_value(v);
            }
            out += i + 1 < size() ? "],\n" : "]\n";
        }
        out += "  ]\n}\n";
        return out;
    }

    static DistanceMatrix parse_matrix_v1(std::string_view text) {
        std::vector<std::string_view> lines;
        {
            std::size_t start = 0;
            for (std::size_t i = 0; i <= text.size(); ++i) {
                if (i == text.size() || text[i] == '\n') {
                    std::string_view line = text.substr(start, i - start);
                    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
                    lines.push_back(line);
                    start = i + 1;
                }
            }
            while (!lines.empty() && lines.back().empty()) lines.pop_back();
        }
        if (lines.empty()) throw FormatError("matrix: empty input");
        constexpr std::string_view prefix = "simdist-matrix v1 n=";
        if (lines[0].substr(0, prefix.size()) != prefix)
            throw FormatError("matrix: missing 'simdist-matrix v1' header");
        std::size_t n = 0;
        {
            const auto num = lines[0].substr(prefix.size());
            const auto [ptr, ec] = std::from_chars(num.data(), num.data() + num.size(), n);
            if (ec != std::errc() || ptr != num.data() + num.size() || n < 2)
                throw FormatError("matrix: bad n in header");
        }
        if (lines.size() != n + 2)
            throw FormatError("matrix: expected " + std::to_string(n + 2) + " lines, got " +
                              std::to_string(lines.size()));
        const auto label_fields = detail::split(lines[1], '\t');
        if (label_fields.size() != n) throw FormatError("matrix: label count mismatch");
        std::vector<std::string> labels(label_fields.begin(), label_fields.end());
        DistanceMatrix m(std::move(labels));
        for (std::size_t i = 0; i < n; ++i) {
            const auto fields = detail::split(lines[2 + i], '\t');
            if (fields.size() != n)
                throw FormatError("matrix: row " + std::to_string(i) + " has " +
                                  std::to_string(fields.size()) + " fields, expected " +
                                  std::to_string(n));
            for (std::size_t j = 0; j < n; ++j)
                m.values_[i * n + j] = detail::parse_value(fields[j]);
        }
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j)
                if (m.at(i, j) != m.at(j, i))
                    throw FormatError("matrix: asymmetric entries for '" + m.labels_[i] +
                                      "' / '" + m.labels_[j] + "'");
        return m;
    }

private:
    std::vector<std::string> labels_;
    std::vector<double> values_;
};

} // namespace simdist
