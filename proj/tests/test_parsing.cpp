#include <doctest.h>

#include <random>

#include "lzdec/parsing_io.hpp"
#include "test_util.hpp"

using namespace lzdec;
using namespace lzdec::test;

TEST_SUITE_BEGIN("parsing");

TEST_CASE("single literal encodes as header plus (97, 0) pair") {
    temp_dir dir("enc1");
    io_stats stats;
    write_parsing_file(dir.file("p.lz77"), {phrase::literal('a')}, 5, stats);
    auto bytes = read_file(dir.file("p.lz77"));
    REQUIRE(bytes.size() == 16 + 10);
    CHECK(std::string(bytes.begin(), bytes.begin() + 8) == "LZ77EMD1");
    CHECK(bytes[8] == 5);
    for (int i = 9; i < 16; ++i) CHECK(bytes[i] == 0);
    std::vector<std::uint8_t> expect = {0x61, 0, 0, 0, 0, 0, 0, 0, 0, 0};
    CHECK(std::vector<std::uint8_t>(bytes.begin() + 16, bytes.end()) == expect);
}

TEST_CASE("single repeat (0,3) encodes as two 5-byte integers") {
    temp_dir dir("enc2");
    io_stats stats;
    // A repeat at position 0 is invalid to *read* (p >= q), but the writer is
    // a plain record encoder: check bytes only.
    write_parsing_file(dir.file("p.lz77"), {phrase::repeat(0, 3)}, 5, stats);
    auto bytes = read_file(dir.file("p.lz77"));
    std::vector<std::uint8_t> expect = {0, 0, 0, 0, 0, 0x03, 0, 0, 0, 0};
    CHECK(std::vector<std::uint8_t>(bytes.begin() + 16, bytes.end()) == expect);
}

TEST_CASE("positions are assigned cumulatively") {
    temp_dir dir("cum");
    io_stats stats;
    std::vector<phrase> ps = {phrase::literal('a'), phrase::literal('b'), phrase::repeat(0, 1),
                              phrase::repeat(0, 3), phrase::repeat(1, 2)};
    write_parsing_file(dir.file("p.lz77"), ps, 5, stats);
    parsing_stats st;
    auto located = read_parsing_file(dir.file("p.lz77"), stats, &st);
    REQUIRE(located.size() == 5);
    std::vector<std::uint64_t> qs;
    for (const auto &ph : located) qs.push_back(ph.pos);
    CHECK(qs == std::vector<std::uint64_t>{0, 1, 2, 3, 6});
    CHECK(st.n == 8);
    CHECK(st.z == 5);
    CHECK(st.z_lit == 2);
    CHECK(st.z_rep == 3);
    CHECK(st.repeat_len_sum == 6);
}

TEST_CASE("empty body after header reads as empty parsing") {
    temp_dir dir("empty");
    io_stats stats;
    write_parsing_file(dir.file("p.lz77"), {}, 5, stats);
    parsing_stats st;
    auto located = read_parsing_file(dir.file("p.lz77"), stats, &st);
    CHECK(located.empty());
    CHECK(st.n == 0);
    CHECK(st.z == 0);
}

TEST_CASE("repeat with source at or after its own position is rejected") {
    temp_dir dir("badp");
    io_stats stats;
    // (97,0)x4 then (5,3) at q=4: source 5 >= 4.
    std::vector<phrase> ps(4, phrase::literal('a'));
    ps.push_back(phrase::repeat(5, 3));
    write_parsing_file(dir.file("p.lz77"), ps, 5, stats);
    CHECK_THROWS_AS(read_parsing_file(dir.file("p.lz77"), stats), format_error);

    // p == q is equally invalid
    ps.back() = phrase::repeat(4, 3);
    write_parsing_file(dir.file("q.lz77"), ps, 5, stats);
    CHECK_THROWS_AS(read_parsing_file(dir.file("q.lz77"), stats), format_error);

    // p < q is accepted
    ps.back() = phrase::repeat(3, 3);
    write_parsing_file(dir.file("r.lz77"), ps, 5, stats);
    CHECK(read_parsing_file(dir.file("r.lz77"), stats).size() == 5);
}

TEST_CASE("literal with first component >= 256 is rejected at read") {
    temp_dir dir("badlit");
    io_stats stats;
    // Forge the record directly (the writer refuses to produce it).
    std::vector<std::uint8_t> bytes(16 + 10, 0);
    std::memcpy(bytes.data(), "LZ77EMD1", 8);
    bytes[8] = 5;
    bytes[16] = 0x00;
    bytes[17] = 0x01;  // a = 256, b = 0
    write_file(dir.file("p.lz77"), bytes);
    CHECK_THROWS_AS(read_parsing_file(dir.file("p.lz77"), stats), format_error);
}

TEST_CASE("writer rejects values that do not fit the width") {
    temp_dir dir("ovf");
    io_stats stats;
    parsing_writer w(dir.file("p.lz77"), 5, stats);
    CHECK_THROWS_AS(w.put(phrase::repeat(1ull << 40, 2)), format_error);
    CHECK_THROWS_AS(w.put(phrase{300, 0}), format_error);  // literal byte out of range
}

TEST_CASE("truncated record and header errors") {
    temp_dir dir("trunc");
    io_stats stats;

    std::vector<std::uint8_t> bytes(16 + 7, 0);  // 7 stray bytes after header
    std::memcpy(bytes.data(), "LZ77EMD1", 8);
    bytes[8] = 5;
    write_file(dir.file("p.lz77"), bytes);
    CHECK_THROWS_AS(read_parsing_file(dir.file("p.lz77"), stats), format_error);

    std::vector<std::uint8_t> short_hdr(10, 0);
    write_file(dir.file("h.lz77"), short_hdr);
    CHECK_THROWS_AS(read_parsing_file(dir.file("h.lz77"), stats), format_error);

    std::vector<std::uint8_t> bad_magic(16, 0);
    std::memcpy(bad_magic.data(), "NOTMAGIC", 8);
    write_file(dir.file("m.lz77"), bad_magic);
    CHECK_THROWS_AS(read_parsing_file(dir.file("m.lz77"), stats), format_error);

    std::vector<std::uint8_t> bad_width(16, 0);
    std::memcpy(bad_width.data(), "LZ77EMD1", 8);
    bad_width[8] = 6;
    write_file(dir.file("w.lz77"), bad_width);
    CHECK_THROWS_AS(read_parsing_file(dir.file("w.lz77"), stats), format_error);
}

TEST_CASE("round trip of 1000 random valid parsings") {
    temp_dir dir("rt");
    std::mt19937_64 rng(7);
    for (int it = 0; it < 1000; ++it) {
        std::vector<phrase> ps = random_parsing(rng, rng() % 600);
        unsigned width = (rng() % 2) ? 5 : 8;
        io_stats stats;
        write_parsing_file(dir.file("p.lz77"), ps, width, stats);
        parsing_stats st;
        auto located = read_parsing_file(dir.file("p.lz77"), stats, &st);
        auto expect = locate(ps);
        REQUIRE(located == expect);
        // phrases tile [0, n): sum of advances equals n
        std::uint64_t n = 0;
        for (const auto &ph : located) {
            CHECK(ph.pos == n);
            n += ph.length;
        }
        CHECK(n == st.n);
        CHECK(st.z == ps.size());
    }
}

TEST_CASE("width 8 handles values beyond 2^40") {
    temp_dir dir("w8");
    io_stats stats;
    parsing_writer w(dir.file("p.lz77"), 8, stats);
    for (int i = 0; i < 3; ++i) w.put(phrase::literal('x'));
    // Far-fetched but encodable: length beyond 40 bits.
    w.put(phrase::repeat(0, 1ull << 41));
    w.close();
    parsing_reader r(dir.file("p.lz77"), stats);
    r.next();
    r.next();
    r.next();
    auto ph = r.next();
    REQUIRE(ph.has_value());
    CHECK(ph->length == 1ull << 41);
}

TEST_SUITE_END();
