#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <cstring>
#include <vector>

#include "simdist/blob.hpp"
#include "simdist/errors.hpp"

namespace simdist::lz {

// LZSS-style byte-oriented format:
//   header: 'S' 'L' 'Z' '1' <window_log>
//   body:   control bytes carrying 8 flags each (LSB first, 1 = match),
//           literal = 1 byte, match = offset-1 (uint16 LE) + length-4 (uint8)
// Window 64 KiB, match lengths 4..259. Matches may self-overlap.

inline constexpr std::size_t kWindowLog = 16;
inline constexpr std::size_t kWindowSize = std::size_t{1} << kWindowLog;
inline constexpr std::size_t kMinMatch = 4;
inline constexpr std::size_t kMaxMatch = kMinMatch + 255;
inline constexpr std::size_t kHeaderSize = 5;

namespace detail {

inline std::uint32_t read32(const std::uint8_t* p) {
    std::uint32_t v;
    std::memcpy(&v, p, 4);
    return v;
}

inline std::uint32_t hash4(const std::uint8_t* p) {
    return (read32(p) * 2654435761u) >> 16; // 16-bit bucket
}

} // namespace detail

/// Greedy hash-chain encoder. `level` in [1,9] sets the chain search depth;
/// output is a deterministic function of (bytes, level).
inline std::vector<std::uint8_t> compress(ByteView in, int level = 6) {
    if (level < 1 || level > 9) throw InvalidArgument("lz: level must be in [1,9]");
    const std::size_t max_chain = std::size_t{8} << level;

    std::vector<std::uint8_t> out;
    out.reserve(kHeaderSize + in.size() / 2 + 16);
    out.insert(out.end(), {'S', 'L', 'Z', '1', std::uint8_t{kWindowLog}});

    const std::size_t n = in.size();
    if (n == 0) return out;

    std::vector<std::int64_t> head(std::size_t{1} << 16, -1);
    std::vector<std::int64_t> prev(kWindowSize, -1);

    auto insert_pos = [&](std::size_t pos) {
        if (pos + kMinMatch > n) return;
        std::uint32_t h = detail::hash4(in.data() + pos);
        prev[pos & (kWindowSize - 1)] = head[h];
        head[h] = static_cast<std::int64_t>(pos);
    };

    std::uint8_t flags = 0;
    int group_bits = 0;
    std::vector<std::uint8_t> group;
    group.reserve(8 * 3);

    auto flush_group = [&] {
        if (group_bits == 0) return;
        out.push_back(flags);
        out.insert(out.end(), group.begin(), group.end());
        flags = 0;
        group_bits = 0;
        group.clear();
    };
    // A token is opened (flag bit), its payload appended, then closed;
    // the group flushes only on close so payload bytes stay with their
    // control byte.
    auto open_token = [&](bool is_match) {
        if (is_match) flags |= std::uint8_t(1u << group_bits);
    };
    auto close_token = [&] {
        ++group_bits;
        if (group_bits == 8) flush_group();
    };

    std::size_t pos = 0;
    while (pos < n) {
        std::size_t best_len = 0;
        std::size_t best_off = 0;
        if (pos + kMinMatch <= n) {
            std::uint32_t h = detail::hash4(in.data() + pos);
            std::int64_t cand = head[h];
            std::size_t depth = 0;
            const std::size_t max_len = std::min(kMaxMatch, n - pos);
            while (cand >= 0 && pos - static_cast<std::size_t>(cand) <= kWindowSize &&
                   depth < max_chain) {
                const std::size_t c = static_cast<std::size_t>(cand);
                std::size_t len = 0;
                while (len < max_len && in[c + len] == in[pos + len]) ++len;
                if (len > best_len) {
                    best_len = len;
                    best_off = pos - c;
                    if (len == max_len) break;
                }
                cand = prev[c & (kWindowSize - 1)];
                ++depth;
            }
        }
        if (best_len >= kMinMatch) {
            open_token(true);
            const std::uint16_t off = static_cast<std::uint16_t>(best_off - 1);
            group.push_back(static_cast<std::uint8_t>(off & 0xff));
            group.push_back(static_cast<std::uint8_t>(off >> 8));
            group.push_back(static_cast<std::uint8_t>(best_len - kMinMatch));
            close_token();
            for (std::size_t i = 0; i < best_len; ++i) insert_pos(pos + i);
            pos += best_len;
        } else {
            open_token(false);
            group.push_back(in[pos]);
            close_token();
            insert_pos(pos);
            ++pos;
        }
    }
    flush_group();
    return out;
}

inline std::vector<std::uint8_t> decompress(ByteView in) {
    if (in.size() < kHeaderSize || in[0] != 'S' || in[1] != 'L' || in[2] != 'Z' || in[3] != '1')
        throw FormatError("lz: bad header");
    if (in[4] != kWindowLog) throw FormatError("lz: unsupported window");

    std::vector<std::uint8_t> out;
    std::size_t p = kHeaderSize;
    while (p < in.size()) {
        const std::uint8_t flags = in[p++];
        for (int bit = 0; bit < 8 && p < in.size(); ++bit) {
            if (flags & (1u << bit)) {
                if (p + 3 > in.size()) throw FormatError("lz: truncated match");
                const std::size_t off = std::size_t(in[p]) + (std::size_t(in[p + 1]) << 8) + 1;
                const std::size_t len = std::size_t(in[p + 2]) + kMinMatch;
                p += 3;
                if (off > out.size()) throw FormatError("lz: offset before stream start");
                for (std::size_t i = 0; i < len; ++i)
                    out.push_back(out[out.size() - off]);
            } else {
                out.push_back(in[p++]);
            }
        }
    }
    return out;
}

} // namespace simdist::lz
