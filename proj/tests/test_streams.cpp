#include <doctest.h>

#include <random>

#include "lzdec/file_io.hpp"
#include "lzdec/scratch.hpp"
#include "lzdec/sha256.hpp"
#include "test_util.hpp"

using namespace lzdec;
using lzdec::test::temp_dir;

TEST_SUITE_BEGIN("streams");

TEST_CASE("write 3 MiB through a 1 MiB buffer gives exactly 3 ops of 1 MiB") {
    temp_dir dir("bufw");
    io_stats stats;
    const std::uint64_t mib = 1ull << 20;
    {
        buffered_writer w(dir.file("x"), mib, stats, "s");
        std::vector<std::uint8_t> chunk(64 * 1024, 0xab);
        for (int i = 0; i < 48; ++i) w.write(chunk.data(), chunk.size());
        w.close();
    }
    const auto &s = stats.stream("s");
    CHECK(s.write_ops == 3);
    CHECK(s.bytes_written == 3 * mib);
    CHECK(std::filesystem::file_size(dir.file("x")) == 3 * mib);
}

TEST_CASE("final partial flush is the only sub-buffer write") {
    temp_dir dir("bufw2");
    io_stats stats;
    {
        buffered_writer w(dir.file("x"), 4096, stats, "s");
        std::vector<std::uint8_t> payload(4096 * 2 + 100, 7);
        w.write(payload.data(), payload.size());
        w.close();
    }
    const auto &s = stats.stream("s");
    CHECK(s.write_ops == 3);
    CHECK(s.bytes_written == 4096 * 2 + 100);
}

TEST_CASE("read-back equals written bytes for random payloads") {
    temp_dir dir("rw");
    std::mt19937_64 rng(42);
    for (int round = 0; round < 20; ++round) {
        std::vector<std::uint8_t> payload(rng() % 300000);
        for (auto &b : payload) b = static_cast<std::uint8_t>(rng());
        io_stats stats;
        {
            buffered_writer w(dir.file("f"), 8192, stats, "w");
            // write in randomly sized pieces
            std::size_t off = 0;
            while (off < payload.size()) {
                std::size_t take =
                    std::min<std::size_t>(payload.size() - off, 1 + rng() % 9000);
                w.write(payload.data() + off, take);
                off += take;
            }
            w.close();
        }
        std::vector<std::uint8_t> got(payload.size());
        buffered_reader r(dir.file("f"), 8192, stats, "r");
        std::size_t off = 0;
        while (off < got.size()) {
            std::size_t take = std::min<std::size_t>(got.size() - off, 1 + rng() % 7000);
            std::size_t n = r.read_some(got.data() + off, take);
            REQUIRE(n == take);
            off += take;
        }
        CHECK(r.at_eof());
        CHECK(got == payload);
        CHECK(stats.stream("w").bytes_written == payload.size());
        CHECK(stats.stream("r").bytes_read == payload.size());
    }
}

TEST_CASE("zero-length file yields nothing and zero ops") {
    temp_dir dir("zero");
    io_stats stats;
    {
        buffered_writer w(dir.file("f"), 4096, stats, "w");
        w.close();
    }
    buffered_reader r(dir.file("f"), 4096, stats, "r");
    std::uint8_t b;
    CHECK(r.read_some(&b, 1) == 0);
    CHECK(r.at_eof());
    CHECK(stats.stream("r").read_ops == 0);
    CHECK(stats.stream("r").bytes_read == 0);
    CHECK(stats.stream("w").write_ops == 0);
}

TEST_CASE("io_stats totals equal the sum over streams") {
    temp_dir dir("tot");
    io_stats stats;
    for (int i = 0; i < 3; ++i) {
        buffered_writer w(dir.file("f" + std::to_string(i)), 4096, stats,
                          "s" + std::to_string(i));
        std::vector<std::uint8_t> payload(1000 * (i + 1), 1);
        w.write(payload.data(), payload.size());
        w.close();
    }
    std::uint64_t sum = 0;
    for (const auto &kv : stats.streams()) sum += kv.second.bytes_written;
    CHECK(sum == stats.total_bytes_written());
    CHECK(sum == 6000);
}

TEST_CASE("positioned reads and writes") {
    temp_dir dir("pos");
    auto fh = file_handle::open_read_write(dir.file("f"), "rw");
    std::vector<std::uint8_t> data(10000);
    for (std::size_t i = 0; i < data.size(); ++i) data[i] = static_cast<std::uint8_t>(i * 7);
    fh.pwrite_all(0, data.data(), data.size());
    std::uint8_t buf[100];
    fh.pread_exact(5000, buf, 100);
    for (int i = 0; i < 100; ++i) CHECK(buf[i] == static_cast<std::uint8_t>((5000 + i) * 7));
    CHECK_THROWS_AS(fh.pread_exact(9990, buf, 100), io_error);
}

TEST_CASE("scratch manager tracks live and peak and cleans up") {
    temp_dir dir("scr");
    io_stats stats;
    std::filesystem::path root = dir.file("scratch_root");
    {
        scratch_manager sm(root);
        CHECK(sm.live_bytes() == 0);
        scratch_file a = sm.create("a");
        {
            buffered_writer w(a.path(), 1024, stats, "a", a.grow_hook());
            std::vector<std::uint8_t> payload(10 * 1024, 1);
            w.write(payload.data(), payload.size());
            w.close();
        }
        CHECK(sm.live_bytes() == 10 * 1024);
        CHECK(sm.peak_bytes() == 10 * 1024);
        {
            scratch_file b = sm.create("b");
            buffered_writer w(b.path(), 1024, stats, "b", b.grow_hook());
            std::vector<std::uint8_t> payload(4 * 1024, 2);
            w.write(payload.data(), payload.size());
            w.close();
            CHECK(sm.live_bytes() == 14 * 1024);
        }  // b removed here
        CHECK(sm.live_bytes() == 10 * 1024);
        CHECK(sm.peak_bytes() == 14 * 1024);
        a.remove();
        CHECK(sm.live_bytes() == 0);
        CHECK(sm.peak_bytes() == 14 * 1024);
        CHECK(sm.file_count() == 0);
    }
    // the root directory was created and emptied by the manager
    CHECK(!std::filesystem::exists(root));
}

TEST_CASE("scratch files are deleted on exception unwind") {
    temp_dir dir("scrx");
    io_stats stats;
    std::filesystem::path root = dir.file("root");
    try {
        scratch_manager sm(root);
        scratch_file a = sm.create("a");
        buffered_writer w(a.path(), 512, stats, "a", a.grow_hook());
        std::vector<std::uint8_t> payload(2048, 3);
        w.write(payload.data(), payload.size());
        w.close();
        throw std::runtime_error("boom");
    } catch (const std::runtime_error &) {
    }
    CHECK(!std::filesystem::exists(root));
}

TEST_CASE("sha256 known vectors") {
    CHECK(sha256::of_bytes("", 0) ==
          "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
    CHECK(sha256::of_bytes("abc", 3) ==
          "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
    std::string s = "abcdbcdecdefdefgefghfghighijhijkijkljklmklmnlmnomnopnopq";
    CHECK(sha256::of_bytes(s.data(), s.size()) ==
          "248d6a61d20638b8e5c026930c3e6039a33ce45964ff2167f6ecedd419db06c1");
    // million 'a' streamed in odd chunk sizes
    sha256 h;
    std::vector<char> chunk(997, 'a');
    std::size_t left = 1000000;
    while (left > 0) {
        std::size_t take = std::min(left, chunk.size());
        h.update(chunk.data(), take);
        left -= take;
    }
    CHECK(h.hex_digest() ==
          "cdc76e5c9914fb9281a1c7e284d73e67f1809a48a497200e046d39ccc7112cd0");
}

TEST_SUITE_END();
