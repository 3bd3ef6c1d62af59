#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include <zlib.h>

#ifdef SIMDIST_HAVE_BZIP2
#include <bzlib.h>
#endif

#include "simdist/blob.hpp"
#include "simdist/errors.hpp"
#include "simdist/lz_codec.hpp"
#include "simdist/ppm_codec.hpp"

namespace simdist {

/// Length in bytes of a compressed representation. Always >= 1 for any
/// real codec (headers exist), and deterministic for a fixed codec
/// configuration and input.
struct CompressedLength {
    std::uint64_t value;
};

/// Uniform interface to compression backends. Instances are immutable
/// after construction (the level is fixed), so concurrent calls on one
/// instance are safe: every operation is a pure function of
/// (configuration, input).
class Compressor {
public:
    virtual ~Compressor() = default;

    /// Canonical configuration string, e.g. "builtin:6".
    virtual std::string id() const = 0;

    /// Sliding-window size in bytes, or 0 for block/statistical codecs
    /// without one. For inputs larger than the window, idempotency
    /// (C(xx) close to C(x)) degrades.
    virtual std::size_t window_size() const = 0;

    /// Full compressed representation of `data`.
    virtual std::vector<std::uint8_t> compress(ByteView data) const = 0;
};

inline CompressedLength compressed_length(const Compressor& c, const Blob& x) {
    const std::size_t n = c.compress(x.view()).size();
    if (n == 0)
        throw CompressorError(c.id() + ": backend returned empty output for '" + x.label + "'");
    return CompressedLength{n};
}

/// C(x‖y): compressed length of the byte concatenation of x and y, in
/// that order.
inline CompressedLength concat_length(const Compressor& c, const Blob& x, const Blob& y) {
    const auto joined = concat_bytes(x.view(), y.view());
    const std::size_t n = c.compress(ByteView(joined.data(), joined.size())).size();
    if (n == 0)
        throw CompressorError(c.id() + ": backend returned empty output for '" + x.label +
                              "'+'" + y.label + "'");
    return CompressedLength{n};
}

namespace codecs {

/// The built-in, dependency-free reference codec (LZ77 family, 64 KiB
/// window). Keeps the test suite hermetic.
class BuiltinLz final : public Compressor {
public:
    explicit BuiltinLz(int level = 6) : level_(level) {
        if (level < 1 || level > 9) throw InvalidArgument("builtin: level must be in [1,9]");
    }
    std::string id() const override { return "builtin:" + std::to_string(level_); }
    std::size_t window_size() const override { return lz::kWindowSize; }
    std::vector<std::uint8_t> compress(ByteView data) const override {
        return lz::compress(data, level_);
    }

private:
    int level_;
};

/// Built-in order-2 PPM (statistical family), also dependency-free.
class BuiltinPpm final : public Compressor {
public:
    std::string id() const override { return "ppm"; }
    std::size_t window_size() const override { return 0; }
    std::vector<std::uint8_t> compress(ByteView data) const override {
        return ppm::compress(data);
    }
};

/// gzip adapter backed by zlib (dictionary family).
class Gzip final : public Compressor {
public:
    explicit Gzip(int level = 9) : level_(level) {
        if (level < 1 || level > 9) throw InvalidArgument("gzip: level must be in [1,9]");
    }
    std::string id() const override { return "gzip:" + std::to_string(level_); }
    std::size_t window_size() const override { return 32768; }
    std::vector<std::uint8_t> compress(ByteView data) const override {
        z_stream zs{};
        if (deflateInit2(&zs, level_, Z_DEFLATED, 15 + 16, 8, Z_DEFAULT_STRATEGY) != Z_OK)
            throw CompressorError("gzip: deflateInit2 failed");
        const uLong bound = deflateBound(&zs, static_cast<uLong>(data.size()));
        std::vector<std::uint8_t> out(bound);
        zs.next_in = const_cast<Bytef*>(data.data());
        zs.avail_in = static_cast<uInt>(data.size());
        zs.next_out = out.data();
        zs.avail_out = static_cast<uInt>(out.size());
        const int rc = deflate(&zs, Z_FINISH);
        const uLong produced = zs.total_out;
        deflateEnd(&zs);
        if (rc != Z_STREAM_END) throw CompressorError("gzip: deflate failed");
        out.resize(produced);
        return out;
    }

private:
    int level_;
};

#ifdef SIMDIST_HAVE_BZIP2
/// bzip2 adapter (block-sorting family); present only when libbz2 was
/// found at configure time.
class Bzip2 final : public Compressor {
public:
    explicit Bzip2(int level = 9) : level_(level) {
        if (level < 1 || level > 9) throw InvalidArgument("bzip2: level must be in [1,9]");
    }
    std::string id() const override { return "bzip2:" + std::to_string(level_); }
    std::size_t window_size() const override { return 0; }
    std::vector<std::uint8_t> compress(ByteView data) const override {
        unsigned dest_len = static_cast<unsigned>(data.size() + data.size() / 100 + 600);
        std::vector<std::uint8_t> out(dest_len);
        const int rc = BZ2_bzBuffToBuffCompress(
            reinterpret_cast<char*>(out.data()), &dest_len,
            const_cast<char*>(reinterpret_cast<const char*>(data.data())),
            static_cast<unsigned>(data.size()), level_, 0, 0);
        if (rc != BZ_OK) throw CompressorError("bzip2: compress failed");
        out.resize(dest_len);
        return out;
    }

private:
    int level_;
};
#endif

} // namespace codecs

/// Resolves a codec selection string: "builtin", "gzip", "bzip2" or
/// "ppm", optionally suffixed with ":<level>" (e.g. "builtin:9").
inline std::unique_ptr<Compressor> make_compressor(std::string_view selector) {
    std::string name(selector);
    int level = -1;
    if (const auto colon = name.find(':'); colon != std::string::npos) {
        const std::string lv = name.substr(colon + 1);
        name = name.substr(0, colon);
        try {
            level = std::stoi(lv);
        } catch (const std::exception&) {
            throw InvalidArgument("bad compressor level in '" + std::string(selector) + "'");
        }
    }
    if (name == "builtin") return std::make_unique<codecs::BuiltinLz>(level < 0 ? 6 : level);
    if (name == "ppm") return std::make_unique<codecs::BuiltinPpm>();
    if (name == "gzip") return std::make_unique<codecs::Gzip>(level < 0 ? 9 : level);
    if (name == "bzip2") {
#ifdef SIMDIST_HAVE_BZIP2
        return std::make_unique<codecs::Bzip2>(level < 0 ? 9 : level);
#else
        throw InvalidArgument("bzip2 support was not built (libbz2 not found)");
#endif
    }
    throw InvalidArgument("unknown compressor '" + std::string(selector) +
                          "' (expected builtin|gzip|bzip2|ppm)");
}

} // namespace simdist
