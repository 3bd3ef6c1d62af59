#include <catch2/catch_amalgamated.hpp>

#include "simdist/compressor.hpp"
#include "simdist/normality.hpp"
#include "testutil.hpp"

using namespace simdist;
using testutil::pseudo_text;
using testutil::random_bytes;

TEST_CASE("builtin codec round-trips") {
    codecs::BuiltinLz lz(6);
    for (std::uint64_t seed = 0; seed < 8; ++seed) {
        for (std::size_t n : {std::size_t{0}, std::size_t{1}, std::size_t{3}, std::size_t{17},
                              std::size_t{1000}, std::size_t{70000}}) {
            const auto data = random_bytes(n, seed);
            const auto packed = lz.compress(ByteView(data.data(), data.size()));
            CHECK(lz::decompress(ByteView(packed.data(), packed.size())) == data);
        }
        const auto text = pseudo_text(20000, seed + 50);
        const Blob b = make_blob("t", text);
        const auto packed = lz.compress(b.view());
        const auto back = lz::decompress(ByteView(packed.data(), packed.size()));
        CHECK(std::string(back.begin(), back.end()) == text);
    }
}

TEST_CASE("ppm codec round-trips") {
    codecs::BuiltinPpm ppm;
    for (std::uint64_t seed = 0; seed < 4; ++seed) {
        for (std::size_t n : {std::size_t{0}, std::size_t{1}, std::size_t{257},
                              std::size_t{5000}}) {
            const auto data = random_bytes(n, seed);
            const auto packed = ppm.compress(ByteView(data.data(), data.size()));
            CHECK(ppm::decompress(ByteView(packed.data(), packed.size())) == data);
        }
        const auto text = pseudo_text(15000, seed + 90);
        const Blob b = make_blob("t", text);
        const auto packed = ppm.compress(b.view());
        const auto back = ppm::decompress(ByteView(packed.data(), packed.size()));
        CHECK(std::string(back.begin(), back.end()) == text);
    }
}

TEST_CASE("compressed_length basics and pinned regressions") {
    codecs::BuiltinLz lz(6);

    const Blob empty = make_blob("empty", "");
    // Header bytes force C(empty) > 0.
    CHECK(compressed_length(lz, empty).value == 5);

    const Blob rep{"rep", std::vector<std::uint8_t>(10240, 'A')};
    const auto crep = compressed_length(lz, rep).value;
    CHECK(crep == 132); // regression pin
    CHECK(crep < 10240 / 10);

    const Blob rnd{"rnd", random_bytes(10240, 1)};
    const auto crnd = compressed_length(lz, rnd).value;
    CHECK(crnd == 11525); // regression pin
    CHECK(double(crnd) >= 10240 * 0.95);

    // repeated calls are identical; so are calls on a fresh instance
    CHECK(compressed_length(lz, rnd).value == crnd);
    CHECK(compressed_length(codecs::BuiltinLz(6), rnd).value == crnd);
    // level participates in the configuration
    CHECK(compressed_length(codecs::BuiltinLz(1), rnd).value >= crnd);
}

TEST_CASE("concat_length") {
    codecs::BuiltinLz lz(6);
    const Blob x = make_blob("x", pseudo_text(10240, 7));
    const Blob empty = make_blob("e", "");

    const auto cx = compressed_length(lz, x).value;
    CHECK(cx == 5959); // regression pin
    CHECK(concat_length(lz, x, empty).value == cx);
    CHECK(concat_length(lz, empty, x).value == cx);

    // idempotency: the second copy compresses into window matches
    const auto cxx = concat_length(lz, x, x).value;
    CHECK(cxx == 6084); // regression pin
    CHECK(double(cxx - cx) / double(cx) < 0.05);

    // independent random halves are incompressible together
    const Blob r1{"r1", random_bytes(10240, 1)};
    const Blob r2{"r2", random_bytes(10240, 2)};
    const auto c1 = compressed_length(lz, r1).value;
    const auto c2 = compressed_length(lz, r2).value;
    const auto c12 = concat_length(lz, r1, r2).value;
    CHECK(c12 == 23045); // regression pin
    const double ratio = double(c12) / double(c1 + c2);
    CHECK(ratio > 0.98);
    CHECK(ratio < 1.02);
}

TEST_CASE("monotone concatenation on the builtin codec") {
    codecs::BuiltinLz lz(6);
    std::vector<Blob> corpus;
    for (std::uint64_t s = 0; s < 5; ++s) {
        corpus.push_back(make_blob("t" + std::to_string(s), pseudo_text(2000 + 700 * s, s)));
        corpus.push_back(Blob{"r" + std::to_string(s), random_bytes(300 + 911 * s, s + 40)});
    }
    corpus.push_back(make_blob("empty", ""));
    for (const auto& x : corpus) {
        const auto cx = compressed_length(lz, x).value;
        CHECK(cx >= 1);
        for (const auto& y : corpus)
            CHECK(concat_length(lz, x, y).value >= cx);
    }
}

TEST_CASE("check_normality") {
    codecs::BuiltinLz lz(6);

    SECTION("requires two samples") {
        std::vector<Blob> one = {make_blob("a", "abc")};
        CHECK_THROWS_AS(check_normality(lz, one), InvalidArgument);
    }

    SECTION("duplicated sample list measures pure idempotency") {
        const Blob x = make_blob("x", pseudo_text(4000, 3));
        std::vector<Blob> samples = {x, Blob{"x2", x.bytes}};
        const auto rep = check_normality(lz, samples);
        const auto cx = compressed_length(lz, x).value;
        const auto cxx = concat_length(lz, x, x).value;
        CHECK(rep.idempotency.max_bytes == cxx - cx);
        CHECK(rep.symmetry.max_bytes == 0); // both orders concatenate the same bytes
        CHECK(rep.sample_count == 2);
    }

    SECTION("book-length texts: builtin codec is nearly symmetric") {
        std::vector<Blob> books = {make_blob("b0", pseudo_text(40000, 100)),
                                   make_blob("b1", pseudo_text(40000, 101))};
        const auto rep = check_normality(lz, books);
        CHECK(rep.symmetry.max_fraction < 0.05);
        CHECK(rep.monotonicity_violations == 0);
        CHECK(rep.monotonicity.max_bytes == 0);
        CHECK(rep.idempotency.max_fraction < 0.05);
        CHECK(rep.oversized_samples == 0);
        CHECK(rep.codec_id == "builtin:6");
    }

    SECTION("samples beyond the window are flagged") {
        std::vector<Blob> big = {Blob{"a", random_bytes(70000, 5)},
                                 make_blob("b", pseudo_text(3000, 6))};
        const auto rep = check_normality(lz, big);
        CHECK(rep.oversized_samples == 1);
        CHECK(rep.window_size == 65536);
    }
}

TEST_CASE("external codec adapters") {
    codecs::Gzip gz(9);
    const Blob empty = make_blob("e", "");
    CHECK(compressed_length(gz, empty).value == 20); // gzip container overhead
    const Blob text = make_blob("t", pseudo_text(8000, 11));
    const auto c1 = compressed_length(gz, text).value;
    CHECK(c1 < text.bytes.size());
    CHECK(compressed_length(gz, text).value == c1);

    codecs::BuiltinPpm ppm;
    CHECK(compressed_length(ppm, empty).value == 5);
    CHECK(compressed_length(ppm, text).value < text.bytes.size());
}

TEST_CASE("make_compressor selector strings") {
    CHECK(make_compressor("builtin")->id() == "builtin:6");
    CHECK(make_compressor("builtin:9")->id() == "builtin:9");
    CHECK(make_compressor("gzip")->id() == "gzip:9");
    CHECK(make_compressor("gzip:1")->id() == "gzip:1");
    CHECK(make_compressor("ppm")->id() == "ppm");
    CHECK_THROWS_AS(make_compressor("lzma"), InvalidArgument);
    CHECK_THROWS_AS(make_compressor("builtin:0"), InvalidArgument);
    CHECK_THROWS_AS(make_compressor("builtin:x"), InvalidArgument);
#ifndef SIMDIST_HAVE_BZIP2
    CHECK_THROWS_WITH(make_compressor("bzip2"), Catch::Matchers::ContainsSubstring("not"));
#else
    CHECK(make_compressor("bzip2")->id() == "bzip2:9");
#endif
}
