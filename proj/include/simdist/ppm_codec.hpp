#pragma once

#include <array>
#include <cstdint>
#include <unordered_map>
#include <vector>

#include "simdist/blob.hpp"
#include "simdist/errors.hpp"

namespace simdist::ppm {

// Order-2 PPM with method-C escapes over a carry-aware range coder.
// Contexts store (symbol, count) lists in insertion order; the escape
// weight is the number of distinct symbols. No exclusions. Encoder and
// decoder walk identical model updates, so the stream round-trips.
//
// Format: 'S' 'P' 'M' '1', LEB128 uncompressed length, coded payload.

inline constexpr std::size_t kRescaleLimit = 1u << 14;
inline constexpr std::uint32_t kIncrement = 4;

namespace detail {

class RangeEncoder {
public:
    explicit RangeEncoder(std::vector<std::uint8_t>& out) : out_(out) {}

    void encode(std::uint32_t cum, std::uint32_t freq, std::uint32_t total) {
        range_ /= total;
        low_ += std::uint64_t(cum) * range_;
        range_ *= freq;
        while (range_ < kTop) {
            shift_low();
            range_ <<= 8;
        }
    }

    void flush() {
        for (int i = 0; i < 5; ++i) shift_low();
    }

private:
    static constexpr std::uint32_t kTop = 1u << 24;

    void shift_low() {
        if (std::uint32_t(low_ >> 32) != 0 || std::uint32_t(low_) < 0xFF000000u) {
            const std::uint8_t carry = std::uint8_t(low_ >> 32);
            do {
                out_.push_back(std::uint8_t(cache_ + carry));
                cache_ = 0xFF;
            } while (--pending_ != 0);
            cache_ = std::uint8_t(low_ >> 24);
        }
        ++pending_;
        low_ = (low_ << 8) & 0xFFFFFFFFull;
    }

    std::vector<std::uint8_t>& out_;
    std::uint64_t low_ = 0;
    std::uint64_t pending_ = 1;
    std::uint32_t range_ = 0xFFFFFFFFu;
    std::uint8_t cache_ = 0;
};

class RangeDecoder {
public:
    RangeDecoder(const std::uint8_t* data, std::size_t size) : data_(data), size_(size) {
        for (int i = 0; i < 5; ++i) code_ = (code_ << 8) | next_byte();
    }

    std::uint32_t decode_freq(std::uint32_t total) {
        range_ /= total;
        std::uint32_t v = std::uint32_t(code_ / range_);
        return v < total ? v : total - 1;
    }

    void decode_update(std::uint32_t cum, std::uint32_t freq) {
        code_ -= cum * range_;
        range_ *= freq;
        while (range_ < kTop) {
            code_ = (code_ << 8) | next_byte();
            range_ <<= 8;
        }
    }

private:
    static constexpr std::uint32_t kTop = 1u << 24;

    std::uint8_t next_byte() { return pos_ < size_ ? data_[pos_++] : 0; }

    const std::uint8_t* data_;
    std::size_t size_;
    std::size_t pos_ = 0;
    std::uint32_t code_ = 0;
    std::uint32_t range_ = 0xFFFFFFFFu;
};

struct Context {
    std::vector<std::pair<std::uint8_t, std::uint32_t>> syms;
    std::uint32_t total = 0;

    void add(std::uint8_t s) {
        for (auto& [sym, cnt] : syms) {
            if (sym == s) {
                cnt += kIncrement;
                total += kIncrement;
                rescale_if_needed();
                return;
            }
        }
        syms.emplace_back(s, kIncrement);
        total += kIncrement;
        rescale_if_needed();
    }

    void rescale_if_needed() {
        if (total + syms.size() < kRescaleLimit) return;
        total = 0;
        for (auto& [sym, cnt] : syms) {
            cnt = (cnt + 1) >> 1;
            total += cnt;
        }
    }
};

struct Model {
    std::unordered_map<std::uint32_t, Context> order2;
    std::array<Context, 256> order1;
    Context order0;

    Context* context_for(int order, std::size_t pos, ByteView data) {
        if (order == 2) {
            if (pos < 2) return nullptr;
            const std::uint32_t key = (std::uint32_t(data[pos - 2]) << 8) | data[pos - 1];
            return &order2[key];
        }
        if (order == 1) {
            if (pos < 1) return nullptr;
            return &order1[data[pos - 1]];
        }
        return &order0;
    }
};

inline void append_leb128(std::vector<std::uint8_t>& out, std::uint64_t v) {
    for (;;) {
        std::uint8_t b = v & 0x7f;
        v >>= 7;
        if (v != 0) b |= 0x80;
        out.push_back(b);
        if (v == 0) return;
    }
}

inline std::uint64_t read_leb128(ByteView in, std::size_t& pos) {
    std::uint64_t v = 0;
    int shift = 0;
    for (;;) {
        if (pos >= in.size() || shift > 63) throw FormatError("ppm: bad length field");
        const std::uint8_t b = in[pos++];
        v |= std::uint64_t(b & 0x7f) << shift;
        if (!(b & 0x80)) return v;
        shift += 7;
    }
}

} // namespace detail

inline std::vector<std::uint8_t> compress(ByteView in) {
    std::vector<std::uint8_t> out = {'S', 'P', 'M', '1'};
    detail::append_leb128(out, in.size());
    if (in.empty()) return out;

    detail::Model model;
    detail::RangeEncoder enc(out);
    for (std::size_t pos = 0; pos < in.size(); ++pos) {
        const std::uint8_t s = in[pos];
        std::array<detail::Context*, 3> touched{};
        bool coded = false;
        for (int order = 2; order >= 0 && !coded; --order) {
            detail::Context* ctx = model.context_for(order, pos, in);
            if (ctx == nullptr) continue;
            touched[order] = ctx;
            if (ctx->syms.empty()) continue; // certain escape, nothing to code
            const std::uint32_t nsyms = std::uint32_t(ctx->syms.size());
            const std::uint32_t total = ctx->total + nsyms;
            std::uint32_t cum = 0;
            for (const auto& [sym, cnt] : ctx->syms) {
                if (sym == s) {
                    enc.encode(cum, cnt, total);
                    coded = true;
                    break;
                }
                cum += cnt;
            }
            if (!coded) enc.encode(ctx->total, nsyms, total); // escape
        }
        if (!coded) enc.encode(s, 1, 256); // order -1: uniform
        for (detail::Context* ctx : touched)
            if (ctx != nullptr) ctx->add(s);
    }
    enc.flush();
    return out;
}

inline std::vector<std::uint8_t> decompress(ByteView in) {
    if (in.size() < 4 || in[0] != 'S' || in[1] != 'P' || in[2] != 'M' || in[3] != '1')
        throw FormatError("ppm: bad header");
    std::size_t pos = 4;
    const std::uint64_t length = detail::read_leb128(in, pos);
    std::vector<std::uint8_t> out;
    out.reserve(length);
    if (length == 0) return out;

    detail::Model model;
    detail::RangeDecoder dec(in.data() + pos, in.size() - pos);
    for (std::uint64_t i = 0; i < length; ++i) {
        std::uint8_t s = 0;
        std::array<detail::Context*, 3> touched{};
        bool coded = false;
        for (int order = 2; order >= 0 && !coded; --order) {
            detail::Context* ctx = model.context_for(order, out.size(), ByteView(out.data(), out.size()));
            if (ctx == nullptr) continue;
            touched[order] = ctx;
            if (ctx->syms.empty()) continue;
            const std::uint32_t nsyms = std::uint32_t(ctx->syms.size());
            const std::uint32_t total = ctx->total + nsyms;
            const std::uint32_t dv = dec.decode_freq(total);
            if (dv < ctx->total) {
                std::uint32_t cum = 0;
                for (const auto& [sym, cnt] : ctx->syms) {
                    if (dv < cum + cnt) {
                        s = sym;
                        dec.decode_update(cum, cnt);
                        coded = true;
                        break;
                    }
                    cum += cnt;
                }
            } else {
                dec.decode_update(ctx->total, nsyms); // escape
            }
        }
        if (!coded) {
            const std::uint32_t dv = dec.decode_freq(256);
            dec.decode_update(dv, 1);
            s = std::uint8_t(dv);
        }
        for (detail::Context* ctx : touched)
            if (ctx != nullptr) ctx->add(s);
        out.push_back(s);
    }
    return out;
}

} // namespace simdist::ppm
