#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "simdist/counts.hpp"
#include "simdist/distance_matrix.hpp"
#include "simdist/errors.hpp"

namespace simdist {

inline constexpr double kLogBase2 = 2.0;
inline constexpr double kLogBaseE = 2.718281828459045235360287471352662498;
inline constexpr double kLogBase10 = 10.0;

enum class NormalizerChoice { M, N, Explicit };

struct NgdOptions {
    NormalizerChoice normalizer = NormalizerChoice::M;
    std::uint64_t explicit_value = 0; // used when normalizer == Explicit
    double log_base = kLogBase2;      // numerator and denominator share it,
                                      // so the distance is base-independent
};

/// NGD result. `undefined` iff f(x) = f(y) = 0; `infinite` iff
/// f(x,y) = 0 with a positive marginal; finite and >= 0 otherwise (for
/// providers obeying the cardinality inequalities).
struct NgdValue {
    enum class Kind { Finite, Infinite, Undefined };

    Kind kind = Kind::Finite;
    double value = 0.0;
    /// Set when the denominator degenerated to zero (every counted page
    /// carries the rarer term); the result is reported as +infinity.
    bool degenerate_denominator = false;

    bool is_finite() const { return kind == Kind::Finite; }
    bool is_infinite() const { return kind == Kind::Infinite; }
    bool is_undefined() const { return kind == Kind::Undefined; }

    static NgdValue finite(double v) { return {Kind::Finite, v, false}; }
    static NgdValue infinite(bool degenerate = false) {
        return {Kind::Infinite, std::numeric_limits<double>::infinity(), degenerate};
    }
    static NgdValue undefined() {
        return {Kind::Undefined, std::numeric_limits<double>::quiet_NaN(), false};
    }

    /// Finite value or +inf; undefined has no matrix representation.
    double as_matrix_entry() const {
        if (is_undefined()) throw InvalidArgument("ngd: undefined value has no matrix entry");
        return is_infinite() ? std::numeric_limits<double>::infinity() : value;
    }
};

namespace detail {

inline double log_base(double v, double base) { return std::log(v) / std::log(base); }

inline double log_count(std::uint64_t count, double base) {
    return log_base(double(count), base);
}

} // namespace detail

/// p(x) = f(x)/M.
inline double probability(const CountProvider& p, std::string_view x) {
    return double(p.freq(x)) / double(p.page_total());
}

/// p(x,y) = f(x,y)/M.
inline double joint_probability(const CountProvider& p, std::string_view x, std::string_view y) {
    return double(p.joint_freq(x, y)) / double(p.page_total());
}

/// p(x|y) = f(x,y)/f(y). Requires f(y) > 0; a zero condition is an
/// error, distinct from a conditional that evaluates to 0.
inline double conditional(const CountProvider& p, std::string_view x, std::string_view y) {
    const std::uint64_t fy = p.freq(y);
    if (fy == 0)
        throw InvalidArgument("conditional: f(" + std::string(y) + ") = 0, p(x|y) undefined");
    return double(p.joint_freq(x, y)) / double(fy);
}

/// D1(x,y) = min{p(x|y), p(y|x)}; in [0,1].
inline double d1(const CountProvider& p, std::string_view x, std::string_view y) {
    if (p.freq(x) == 0 || p.freq(y) == 0)
        throw InvalidArgument("d1: both marginal frequencies must be positive");
    return std::min(conditional(p, x, y), conditional(p, y, x));
}

/// D2(x,y) = max{log 1/p(x|y), log 1/p(y|x)}; >= 0, +inf when f(x,y) = 0.
inline double d2(const CountProvider& p, std::string_view x, std::string_view y,
                 double base = kLogBase2) {
    if (p.freq(x) == 0 || p.freq(y) == 0)
        throw InvalidArgument("d2: both marginal frequencies must be positive");
    if (p.joint_freq(x, y) == 0) return std::numeric_limits<double>::infinity();
    const double pxy = conditional(p, x, y);
    const double pyx = conditional(p, y, x);
    return std::max(detail::log_base(1.0 / pxy, base), detail::log_base(1.0 / pyx, base));
}

/// D3(x,y) = D2(x,y) / max{log 1/p(x), log 1/p(y)}: the normalized form
/// of the chain, equal to NGD with normalizer M.
inline NgdValue d3(const CountProvider& p, std::string_view x, std::string_view y,
                   double base = kLogBase2) {
    const std::uint64_t fx = p.freq(x);
    const std::uint64_t fy = p.freq(y);
    if (fx == 0 && fy == 0) return NgdValue::undefined();
    if (p.joint_freq(x, y) == 0) return NgdValue::infinite();
    const double num = d2(p, x, y, base);
    if (num == 0.0) return NgdValue::finite(0.0);
    const double den = std::max(detail::log_base(1.0 / probability(p, x), base),
                                detail::log_base(1.0 / probability(p, y), base));
    if (den <= 0.0) return NgdValue::infinite(true);
    return NgdValue::finite(num / den);
}

namespace detail {

inline std::uint64_t resolve_normalizer(const CountProvider& p, const NgdOptions& opts) {
    switch (opts.normalizer) {
    case NormalizerChoice::M:
        return p.page_total();
    case NormalizerChoice::N: {
        const auto n = p.known_n();
        if (!n)
            throw InvalidArgument(
                "ngd: provider has no exact N; pass --normalizer M (the N:=M fallback) "
                "or an explicit value");
        return *n;
    }
    case NormalizerChoice::Explicit:
        if (opts.explicit_value == 0)
            throw InvalidArgument("ngd: explicit normalizer must be >= 1");
        return opts.explicit_value;
    }
    throw InvalidArgument("ngd: bad normalizer choice");
}

} // namespace detail

struct NgdExplain {
    std::uint64_t fx = 0, fy = 0, fxy = 0;
    std::uint64_t m = 0;
    std::uint64_t normalizer_used = 0; // 0 when never resolved (degenerate cases)
    double numerator = 0.0;
    double denominator = 0.0;
    NgdValue value;
};

/// NGD(x,y) = (max{log f(x), log f(y)} - log f(x,y))
///          / (log V - min{log f(x), log f(y)})
/// with V the chosen normalizer (M, exact N, or an explicit value).
/// Arguments are ordered canonically before evaluation, so the result is
/// bitwise symmetric in x and y.
inline NgdExplain ngd_explained(const CountProvider& p, std::string_view x, std::string_view y,
                                const NgdOptions& opts = {}) {
    const bool swap = y < x;
    const std::string_view a = swap ? y : x;
    const std::string_view b = swap ? x : y;

    NgdExplain ex;
    const std::uint64_t fa = p.freq(a);
    const std::uint64_t fb = p.freq(b);
    const std::uint64_t fab = p.joint_freq(a, b);
    ex.fx = swap ? fb : fa;
    ex.fy = swap ? fa : fb;
    ex.fxy = fab;
    ex.m = p.page_total();

    if (fa == 0 && fb == 0) {
        ex.value = NgdValue::undefined();
        return ex;
    }
    if (fab == 0) {
        ex.value = NgdValue::infinite();
        return ex;
    }

    const double base = opts.log_base;
    const double num = std::max(detail::log_count(fa, base), detail::log_count(fb, base)) -
                       detail::log_count(fab, base);
    ex.numerator = num;
    if (num == 0.0) {
        // x and y name the same event; the distance is 0 regardless of
        // the normalizer, so none is resolved (or validated) here.
        ex.value = NgdValue::finite(0.0);
        return ex;
    }

    const std::uint64_t v = detail::resolve_normalizer(p, opts);
    ex.normalizer_used = v;
    if (v <= std::max(fa, fb))
        throw InvalidArgument("ngd: normalizing factor " + std::to_string(v) +
                              " must exceed any f(x); max frequency here is " +
                              std::to_string(std::max(fa, fb)));
    const double den = detail::log_count(v, base) -
                       std::min(detail::log_count(fa, base), detail::log_count(fb, base));
    ex.denominator = den;
    if (den <= 0.0) {
        ex.value = NgdValue::infinite(true);
        return ex;
    }
    ex.value = NgdValue::finite(num / den);
    return ex;
}

inline NgdValue ngd(const CountProvider& p, std::string_view x, std::string_view y,
                    const NgdOptions& opts = {}) {
    return ngd_explained(p, x, y, opts).value;
}

/// Shannon-Fano code length of a term's event under the normalized
/// event distribution: G(x) = log 1/g(x). +inf for zero-frequency terms.
struct GoogleCode {
    double value = 0.0;
    bool is_infinite() const { return std::isinf(value); }
};

namespace detail {

inline std::uint64_t code_normalizer(const CountProvider& p,
                                     std::optional<std::uint64_t> n_override) {
    if (n_override) {
        if (*n_override == 0) throw InvalidArgument("google_code: normalizer must be >= 1");
        return *n_override;
    }
    return normalizer(p); // exact N when known, else the documented N := M default
}

inline GoogleCode code_from_count(std::uint64_t f, std::uint64_t n, double base) {
    if (f == 0) return {std::numeric_limits<double>::infinity()};
    const double g = double(f) / double(n);
    return {log_base(1.0 / g, base)};
}

} // namespace detail

inline GoogleCode google_code(const CountProvider& p, std::string_view x, double base = kLogBase2,
                              std::optional<std::uint64_t> n_override = std::nullopt) {
    return detail::code_from_count(p.freq(x), detail::code_normalizer(p, n_override), base);
}

inline GoogleCode google_code(const CountProvider& p, std::string_view x, std::string_view y,
                              double base = kLogBase2,
                              std::optional<std::uint64_t> n_override = std::nullopt) {
    return detail::code_from_count(p.joint_freq(x, y), detail::code_normalizer(p, n_override),
                                   base);
}

/// NGD assembled in NCD shape from code lengths:
/// (G(x,y) - min(G(x), G(y))) / max(G(x), G(y)).
inline NgdValue ngd_from_codes(GoogleCode gx, GoogleCode gy, GoogleCode gxy) {
    if (gx.is_infinite() && gy.is_infinite()) return NgdValue::undefined();
    if (gxy.is_infinite()) return NgdValue::infinite();
    const double num = gxy.value - std::min(gx.value, gy.value);
    if (num == 0.0) return NgdValue::finite(0.0);
    const double den = std::max(gx.value, gy.value);
    if (den <= 0.0) return NgdValue::infinite(true);
    return NgdValue::finite(num / den);
}

/// Pairwise NGD matrix. Entries may be +infinity; the diagonal is 0 by
/// the self-distance convention (and equals ngd(x,x) whenever that is
/// defined). Pairs of two zero-frequency terms are undefined, so the
/// builder refuses to emit: it throws up front, naming every
/// zero-frequency term, before producing any output.
inline DistanceMatrix ngd_matrix(const CountProvider& p, std::span<const std::string> terms,
                                 const NgdOptions& opts = {}) {
    if (terms.size() < 2) throw InvalidArgument("ngd_matrix: need at least 2 terms");
    std::vector<std::string> labels(terms.begin(), terms.end());
    DistanceMatrix m(labels); // validates uniqueness

    std::vector<std::uint64_t> freqs(labels.size());
    std::vector<std::string> zero_terms;
    for (std::size_t i = 0; i < labels.size(); ++i) {
        freqs[i] = p.freq(labels[i]);
        if (freqs[i] == 0) zero_terms.push_back(labels[i]);
    }
    if (zero_terms.size() >= 2) {
        std::string msg = "ngd_matrix: pairs among zero-frequency terms are undefined:";
        for (const auto& t : zero_terms) msg += " '" + t + "'";
        throw InvalidArgument(msg);
    }

    for (std::size_t i = 0; i < labels.size(); ++i) {
        m.set_symmetric(i, i, 0.0);
        for (std::size_t j = i + 1; j < labels.size(); ++j)
            m.set_symmetric(i, j, ngd(p, labels[i], labels[j], opts).as_matrix_entry());
    }
    return m;
}

} // namespace simdist
