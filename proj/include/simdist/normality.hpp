#pragma once

#include <algorithm>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "simdist/compressor.hpp"

namespace simdist {

/// max/mean deviation, in bytes and as a fraction of max(C(x), C(y)) of
/// the pair the deviation was measured on.
struct DeviationStat {
    std::uint64_t max_bytes = 0;
    double mean_bytes = 0.0;
    double max_fraction = 0.0;
    double mean_fraction = 0.0;
};

/// Empirical compressor-normality measurements over a sample set:
/// how far the codec is from an ideal compressor on the axes the NCD
/// construction cares about.
struct NormalityReport {
    std::string codec_id;
    std::size_t window_size = 0;
    std::size_t sample_count = 0;

    DeviationStat idempotency;  // |C(xx) - C(x)| per sample
    DeviationStat monotonicity; // max(0, C(x) - C(xy)) per ordered pair
    DeviationStat symmetry;     // |C(xy) - C(yx)| per unordered pair

    /// Ordered pairs with C(xy) < C(x), reported separately from the
    /// (by construction non-negative) deviation statistic.
    std::size_t monotonicity_violations = 0;

    /// Samples larger than the codec window; idempotency degrades for
    /// these because the second copy falls outside the match window.
    std::size_t oversized_samples = 0;
};

/// Measures empirical deviations from compressor normality
/// (idempotency, monotonicity, symmetry) over all sample pairs.
inline NormalityReport check_normality(const Compressor& c, std::span<const Blob> samples) {
    if (samples.size() < 2)
        throw InvalidArgument("check_normality: need at least 2 samples");

    NormalityReport rep;
    rep.codec_id = c.id();
    rep.window_size = c.window_size();
    rep.sample_count = samples.size();

    const std::size_t n = samples.size();
    std::vector<std::uint64_t> single(n);
    for (std::size_t i = 0; i < n; ++i) {
        single[i] = compressed_length(c, samples[i]).value;
        if (rep.window_size != 0 && samples[i].bytes.size() > rep.window_size)
            ++rep.oversized_samples;
    }

    auto accumulate = [](DeviationStat& st, std::uint64_t dev_bytes, std::uint64_t denom,
                         std::size_t count) {
        const double frac = denom == 0 ? 0.0 : double(dev_bytes) / double(denom);
        st.max_bytes = std::max(st.max_bytes, dev_bytes);
        st.max_fraction = std::max(st.max_fraction, frac);
        st.mean_bytes += double(dev_bytes) / double(count);
        st.mean_fraction += frac / double(count);
    };

    for (std::size_t i = 0; i < n; ++i) {
        const std::uint64_t cxx = concat_length(c, samples[i], samples[i]).value;
        const std::uint64_t dev = cxx > single[i] ? cxx - single[i] : single[i] - cxx;
        accumulate(rep.idempotency, dev, single[i], n);
    }

    // C(xy) for every ordered pair (i != j); reused for both the
    // monotonicity and symmetry statistics.
    std::vector<std::vector<std::uint64_t>> cxy(n, std::vector<std::uint64_t>(n, 0));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (i != j) cxy[i][j] = concat_length(c, samples[i], samples[j]).value;

    const std::size_t ordered_pairs = n * (n - 1);
    const std::size_t unordered_pairs = ordered_pairs / 2;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            if (i == j) continue;
            const std::uint64_t denom = std::max(single[i], single[j]);
            const std::uint64_t viol = cxy[i][j] < single[i] ? single[i] - cxy[i][j] : 0;
            if (viol > 0) ++rep.monotonicity_violations;
            accumulate(rep.monotonicity, viol, denom, ordered_pairs);
            if (i < j) {
                const std::uint64_t sym = cxy[i][j] > cxy[j][i] ? cxy[i][j] - cxy[j][i]
                                                                : cxy[j][i] - cxy[i][j];
                accumulate(rep.symmetry, sym, denom, unordered_pairs);
            }
        }
    }
    return rep;
}

} // namespace simdist
