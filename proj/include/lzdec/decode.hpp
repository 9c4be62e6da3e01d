#ifndef LZDEC_DECODE_HPP_INCLUDED
#define LZDEC_DECODE_HPP_INCLUDED

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "lzdec/io_stats.hpp"
#include "lzdec/types.hpp"

namespace lzdec {

struct decode_options {
    memory_budget budget;                         // RAM and I/O unit intent
    std::optional<std::uint64_t> segment_size;    // b override (pq / plain)
    std::uint64_t lmax = 16;                      // pq chunk bound
    std::uint64_t disk_budget = 0;                // plain; 0 = unlimited
    std::filesystem::path tmp_dir;                // scratch root (required by EM decoders)
    bool runtime_checks = true;                   // per-byte recovery assertions
};

struct decode_report {
    std::string algorithm;
    std::uint64_t n = 0;
    std::uint64_t z = 0;
    double wallclock_s = 0.0;
    double mib_per_s = 0.0;

    io_stats io;
    std::uint64_t peak_scratch = 0;

    // Far-byte conservation counters (criterion: every far text byte passes
    // through the queues exactly once).
    std::uint64_t sum_far_len = 0;
    std::uint64_t far_payload_written = 0;
    std::uint64_t far_payload_read = 0;
    std::uint64_t pq_payload_inserted = 0;

    // Partwise accounting.
    std::uint32_t part_count = 1;
    std::uint64_t measured_peak_disk = 0;
    std::uint64_t replay_bytes = 0;
};

// In-RAM baseline: needs n bytes of RAM for the text.
decode_report decode_ram(const std::filesystem::path &parsing,
                         const std::filesystem::path &output, const decode_options &opts);

// Naive external decoder: RAM write-back window, positioned reads for
// sources behind it.
decode_report decode_naive(const std::filesystem::path &parsing,
                           const std::filesystem::path &output, const decode_options &opts);

// External decoder built on EM sorting and an external priority queue.
decode_report decode_empq(const std::filesystem::path &parsing,
                          const std::filesystem::path &output, const decode_options &opts);

// External decoder built on distribution and per-segment queues; honors
// opts.disk_budget by partwise processing when it is nonzero.
decode_report decode_plain(const std::filesystem::path &parsing,
                           const std::filesystem::path &output, const decode_options &opts);

// Greedy on-line partitioning of a parsing under a disk budget.
struct part_plan {
    struct part {
        std::uint64_t first_phrase = 0;  // record index into the parsing
        std::uint64_t first_pos = 0;     // text position of that phrase
        std::uint64_t est_peak_disk = 0;
    };
    std::vector<part> parts;
    std::uint64_t disk_budget = 0;
    std::uint64_t n = 0;
    std::uint64_t z = 0;
};

part_plan plan_parts(const std::filesystem::path &parsing, std::uint64_t disk_budget,
                     std::uint64_t segment_size, const decode_options &opts, io_stats &stats);

}  // namespace lzdec

#endif  // LZDEC_DECODE_HPP_INCLUDED
