#ifndef LZDEC_SRC_DECODE_INTERNAL_HPP_INCLUDED
#define LZDEC_SRC_DECODE_INTERNAL_HPP_INCLUDED

#include <chrono>
#include <memory>
#include <optional>

#include "lzdec/decode.hpp"
#include "lzdec/errors.hpp"
#include "lzdec/file_io.hpp"
#include "lzdec/parsing_io.hpp"
#include "lzdec/scratch.hpp"
#include "lzdec/split.hpp"

namespace lzdec::detail {

// Stream names used in io_stats by the decoders.
inline constexpr const char *k_parse_scan = "parse_scan";
inline constexpr const char *k_parse_in = "parse_in";
inline constexpr const char *k_text_out = "text_out";
inline constexpr const char *k_text_rand_in = "text_rand_in";
inline constexpr const char *k_split_far = "split_far";
inline constexpr const char *k_split_near = "split_near";
inline constexpr const char *k_split_prev = "split_prev";
inline constexpr const char *k_split_same = "split_same";
inline constexpr const char *k_split_lit = "split_lit";
inline constexpr const char *k_sort_far = "sort_far";
inline constexpr const char *k_pq = "pq";
inline constexpr const char *k_r_buckets = "r_buckets";
inline constexpr const char *k_q_queues = "q_queues";
inline constexpr const char *k_replay_in = "replay_in";
inline constexpr const char *k_seg_init = "seg_init";

class wallclock {
  public:
    wallclock() : m_start(std::chrono::steady_clock::now()) {}
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - m_start).count();
    }

  private:
    std::chrono::steady_clock::time_point m_start;
};

inline void finish_report(decode_report &r, const wallclock &clock, const io_stats &stats,
                          std::uint64_t peak_scratch) {
    r.wallclock_s = clock.seconds();
    r.mib_per_s = r.wallclock_s > 0 ? (double(r.n) / double(1 << 20)) / r.wallclock_s : 0.0;
    r.io = stats;
    r.peak_scratch = peak_scratch;
}

// Effective I/O unit: the requested block size, shrunk so a handful of
// buffers cannot eat the whole RAM budget, and 4 KiB aligned.
inline std::uint64_t effective_unit(const memory_budget &budget) {
    std::uint64_t unit = std::min(budget.block_bytes, budget.ram_bytes / 16);
    unit = std::max<std::uint64_t>(4096, unit & ~std::uint64_t{4095});
    return unit;
}

// Sequential reader of fixed-size records with one-record lookahead.
template <class Record>
class record_stream {
  public:
    record_stream() = default;
    record_stream(const std::filesystem::path &path, std::uint64_t unit, io_stats &stats,
                  const std::string &name) {
        open(path, unit, stats, name);
    }

    void open(const std::filesystem::path &path, std::uint64_t unit, io_stats &stats,
              const std::string &name) {
        m_in = std::make_unique<buffered_reader>(path, unit, stats, name);
        advance();
    }

    bool empty() const { return !m_front.has_value(); }
    const Record &front() const { return *m_front; }

    Record take() {
        Record r = *m_front;
        advance();
        return r;
    }

  private:
    void advance() {
        m_front.reset();
        if (!m_in) return;
        std::uint8_t buf[Record::encoded_size];
        if (m_in->read_record(buf, Record::encoded_size)) m_front = Record::decode(buf);
    }

    std::unique_ptr<buffered_reader> m_in;
    std::optional<Record> m_front;
};

// Requires every position to fit the scratch record width.
inline void check_scratch_limit(std::uint64_t n) {
    if (n >= k_scratch_pos_limit)
        throw budget_error("text length " + std::to_string(n) +
                           " exceeds the 40-bit scratch record format");
}

}  // namespace lzdec::detail

#endif  // LZDEC_SRC_DECODE_INTERNAL_HPP_INCLUDED
