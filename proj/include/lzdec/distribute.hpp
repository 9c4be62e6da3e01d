#ifndef LZDEC_DISTRIBUTE_HPP_INCLUDED
#define LZDEC_DISTRIBUTE_HPP_INCLUDED

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "lzdec/errors.hpp"
#include "lzdec/file_io.hpp"
#include "lzdec/scratch.hpp"

namespace lzdec {

// Multi-round distribution of fixed-size records into m bucket files.
//
// With fan-out F, a bucket range wider than F is first split into F
// consecutive sub-ranges (supersegments), then each sub-range is refined
// recursively, giving ceil(log_F m) rounds; every record is written exactly
// once per round. Buckets that receive no records get no file. Each level
// scans its input sequentially, so input order is preserved inside every
// bucket.
template <class Record>
struct distribute_result {
    std::uint32_t rounds = 0;
    std::uint64_t records = 0;
    std::vector<std::optional<scratch_file>> buckets;
};

// Reference round count: ceil(log_fan m) for m >= 2, one pass for m = 1.
inline std::uint32_t distribute_rounds(std::uint64_t m, std::uint64_t fan) {
    if (m <= 1) return m ? 1 : 0;
    std::uint32_t rounds = 0;
    std::uint64_t span = m;
    while (span > 1) {
        span = (span + fan - 1) / fan;
        ++rounds;
    }
    return rounds;
}

namespace detail {

template <class Record, class BucketOf>
class range_distributor {
  public:
    range_distributor(std::uint64_t fan, std::uint64_t buf_bytes, BucketOf bucket_of,
                      scratch_manager &scratch, io_stats &stats, const std::string &stream,
                      distribute_result<Record> &result)
        : m_fan(fan),
          m_buf_bytes(buf_bytes),
          m_bucket_of(bucket_of),
          m_scratch(&scratch),
          m_stats(&stats),
          m_stream(stream),
          m_result(&result) {}

    // Splits the records of `source` over [lo, hi) one level, then recurses.
    // `owned`, when present, is deleted as soon as the level scan finishes.
    void refine(const std::filesystem::path &source, std::optional<scratch_file> owned,
                std::uint64_t lo, std::uint64_t hi, std::uint32_t depth) {
        const std::uint64_t range = hi - lo;
        const std::uint64_t span = (range + m_fan - 1) / m_fan;
        const std::uint64_t children = (range + span - 1) / span;
        const bool leaf_level = (span == 1);

        std::vector<std::optional<scratch_file>> files(children);
        std::vector<std::unique_ptr<buffered_writer>> writers(children);
        {
            buffered_reader in(source, m_buf_bytes, *m_stats, m_stream);
            std::uint8_t rec[Record::encoded_size];
            while (in.read_record(rec, Record::encoded_size)) {
                Record r = Record::decode(rec);
                std::uint64_t bucket = m_bucket_of(r);
                if (bucket < lo || bucket >= hi)
                    throw invariant_error("record routed outside its bucket range");
                std::uint64_t child = (bucket - lo) / span;
                if (!writers[child]) {
                    files[child] = m_scratch->create("dist" + std::to_string(depth));
                    writers[child] = std::make_unique<buffered_writer>(
                        files[child]->path(), m_buf_bytes, *m_stats, m_stream,
                        files[child]->grow_hook());
                }
                writers[child]->write(rec, Record::encoded_size);
            }
            for (auto &w : writers)
                if (w) w->close();
        }
        if (owned) owned->remove();
        if (depth + 1 > m_result->rounds) m_result->rounds = depth + 1;

        if (leaf_level) {
            for (std::uint64_t c = 0; c < children; ++c)
                if (files[c]) m_result->buckets[lo + c] = std::move(*files[c]);
            return;
        }
        for (std::uint64_t c = 0; c < children; ++c) {
            if (!files[c]) continue;
            std::uint64_t clo = lo + c * span;
            std::uint64_t chi = std::min(hi, clo + span);
            if (chi - clo == 1) {
                m_result->buckets[clo] = std::move(*files[c]);
            } else {
                std::filesystem::path child_path = files[c]->path();
                refine(child_path, std::move(files[c]), clo, chi, depth + 1);
            }
        }
    }

  private:
    std::uint64_t m_fan;
    std::uint64_t m_buf_bytes;
    BucketOf m_bucket_of;
    scratch_manager *m_scratch;
    io_stats *m_stats;
    std::string m_stream;
    distribute_result<Record> *m_result;
};

}  // namespace detail

// Distributes the records of `input` into m buckets. `fan` bounds the number
// of simultaneously open output files per level (at least 2). Counts of
// bucket-stream bytes written relative to the input size reveal the number
// of rounds.
template <class Record, class BucketOf>
distribute_result<Record> distribute_file(const std::filesystem::path &input, std::uint64_t m,
                                          BucketOf bucket_of, std::uint64_t fan,
                                          std::uint64_t buf_bytes, scratch_manager &scratch,
                                          io_stats &stats, const std::string &stream) {
    if (m < 1) throw contract_error("distribute needs at least one bucket");
    if (fan < 2) throw budget_error("distribution fan-out below 2");

    distribute_result<Record> result;
    result.buckets.resize(m);
    result.records = std::filesystem::file_size(input) / Record::encoded_size;

    if (m == 1) {
        // Single bucket: one materialization pass.
        scratch_file only = scratch.create("dist0");
        buffered_reader in(input, buf_bytes, stats, stream);
        buffered_writer out(only.path(), buf_bytes, stats, stream, only.grow_hook());
        std::uint8_t rec[Record::encoded_size];
        while (in.read_record(rec, Record::encoded_size)) out.write(rec, Record::encoded_size);
        out.close();
        result.rounds = 1;
        result.buckets[0] = std::move(only);
        return result;
    }
    detail::range_distributor<Record, BucketOf> rd(fan, buf_bytes, bucket_of, scratch, stats,
                                                   stream, result);
    rd.refine(input, std::nullopt, 0, m, 0);
    return result;
}

// Same, but consumes a scratch file (deleted after the first level scan).
template <class Record, class BucketOf>
distribute_result<Record> distribute_scratch(scratch_file input, std::uint64_t records,
                                             std::uint64_t m, BucketOf bucket_of,
                                             std::uint64_t fan, std::uint64_t buf_bytes,
                                             scratch_manager &scratch, io_stats &stats,
                                             const std::string &stream) {
    if (m < 1) throw contract_error("distribute needs at least one bucket");
    if (fan < 2) throw budget_error("distribution fan-out below 2");

    distribute_result<Record> result;
    result.records = records;
    result.buckets.resize(m);
    if (m == 1) {
        result.rounds = 1;
        result.buckets[0] = std::move(input);
        return result;
    }
    std::filesystem::path p = input.path();
    detail::range_distributor<Record, BucketOf> rd(fan, buf_bytes, bucket_of, scratch, stats,
                                                   stream, result);
    rd.refine(p, std::move(input), 0, m, 0);
    return result;
}

}  // namespace lzdec

#endif  // LZDEC_DISTRIBUTE_HPP_INCLUDED
