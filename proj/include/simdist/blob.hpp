#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace simdist {

using ByteView = std::span<const std::uint8_t>;

/// A labeled finite byte sequence. Labels identify objects in distance
/// matrices and must be unique within any collection handed to matrix
/// operations.
struct Blob {
    std::string label;
    std::vector<std::uint8_t> bytes;

    ByteView view() const { return ByteView(bytes.data(), bytes.size()); }
};

inline Blob make_blob(std::string label, std::string_view text) {
    Blob b;
    b.label = std::move(label);
    b.bytes.assign(text.begin(), text.end());
    return b;
}

inline std::vector<std::uint8_t> concat_bytes(ByteView x, ByteView y) {
    std::vector<std::uint8_t> out;
    out.reserve(x.size() + y.size());
    out.insert(out.end(), x.begin(), x.end());
    out.insert(out.end(), y.begin(), y.end());
    return out;
}

} // namespace simdist
