#pragma once

#include <algorithm>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "simdist/compressor.hpp"
#include "simdist/distance_matrix.hpp"
#include "simdist/parallel.hpp"

namespace simdist {

/// How C(xy) is obtained for the NCD numerator. Real codecs are not
/// order-symmetric, so the default takes min(C(xy), C(yx)), which keeps
/// the distance invariant under argument order. `Raw` uses the argument
/// order only.
enum class ConcatPolicy { MinOfBothOrders, Raw };

/// NCD(x,y) = (C(xy) - min(C(x),C(y))) / max(C(x),C(y)).
/// Dimensionless; in [0,1] for an ideal compressor, slightly outside for
/// real ones. Values are not clamped here.
inline double ncd(const Compressor& c, const Blob& x, const Blob& y,
                  ConcatPolicy policy = ConcatPolicy::MinOfBothOrders) {
    const std::uint64_t cx = compressed_length(c, x).value;
    const std::uint64_t cy = compressed_length(c, y).value;
    std::uint64_t cxy = concat_length(c, x, y).value;
    if (policy == ConcatPolicy::MinOfBothOrders)
        cxy = std::min(cxy, concat_length(c, y, x).value);
    const std::uint64_t cmin = std::min(cx, cy);
    const std::uint64_t cmax = std::max(cx, cy); // >= 1 for any real codec
    return (double(cxy) - double(cmin)) / double(cmax);
}

/// Pairwise NCD over a collection. Each C(x) is computed exactly once;
/// pair evaluation may run in parallel, with results independent of
/// scheduling. The diagonal is computed, not assumed zero.
inline DistanceMatrix ncd_matrix(const Compressor& c, std::span<const Blob> objects,
                                 ConcatPolicy policy = ConcatPolicy::MinOfBothOrders) {
    if (objects.size() < 2) throw InvalidArgument("ncd_matrix: need at least 2 objects");
    std::vector<std::string> labels;
    labels.reserve(objects.size());
    for (const auto& b : objects) labels.push_back(b.label);
    DistanceMatrix m(std::move(labels)); // validates label uniqueness up front

    const std::size_t n = objects.size();
    std::vector<std::uint64_t> single(n);
    parallel_for(n, [&](std::size_t i) { single[i] = compressed_length(c, objects[i]).value; });

    struct Pair {
        std::size_t i, j;
    };
    std::vector<Pair> pairs;
    pairs.reserve(n * (n + 1) / 2);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j) pairs.push_back({i, j});

    std::vector<double> results(pairs.size());
    parallel_for(pairs.size(), [&](std::size_t k) {
        const auto [i, j] = pairs[k];
        std::uint64_t cxy = concat_length(c, objects[i], objects[j]).value;
        if (policy == ConcatPolicy::MinOfBothOrders && i != j)
            cxy = std::min(cxy, concat_length(c, objects[j], objects[i]).value);
        const std::uint64_t cmin = std::min(single[i], single[j]);
        const std::uint64_t cmax = std::max(single[i], single[j]);
        results[k] = (double(cxy) - double(cmin)) / double(cmax);
    });

    for (std::size_t k = 0; k < pairs.size(); ++k)
        m.set_symmetric(pairs[k].i, pairs[k].j, results[k]);
    return m;
}

} // namespace simdist
