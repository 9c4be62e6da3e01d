#ifndef LZDEC_EM_SORT_HPP_INCLUDED
#define LZDEC_EM_SORT_HPP_INCLUDED

#include <algorithm>
#include <cstdint>
#include <memory>
#include <queue>
#include <string>
#include <vector>

#include "lzdec/file_io.hpp"
#include "lzdec/scratch.hpp"
#include "lzdec/types.hpp"

namespace lzdec {

// External merge sort over fixed-size records.
//
// Record must provide:
//   static constexpr std::size_t encoded_size;
//   void encode(std::uint8_t *dst) const;
//   static Record decode(const std::uint8_t *src);
//
// Runs are formed with a stable sort and merged with ties broken by run
// index, so equal keys keep their input order end to end. Fan-in is
// floor(ram/block) - 1 (one block reserved for output). All scratch is freed
// before returning.
struct em_sort_report {
    std::uint64_t records = 0;
    std::uint32_t initial_runs = 0;
    std::uint32_t merge_rounds = 0;
};

namespace detail {

template <class Record>
class run_cursor {
  public:
    run_cursor(const std::filesystem::path &path, std::uint64_t buf_bytes, io_stats &stats,
               const std::string &stream)
        : m_in(path, buf_bytes, stats, stream) {
        advance();
    }

    bool exhausted() const { return m_exhausted; }
    const Record &current() const { return m_current; }

    void advance() {
        std::uint8_t buf[Record::encoded_size];
        if (m_in.read_record(buf, Record::encoded_size))
            m_current = Record::decode(buf);
        else
            m_exhausted = true;
    }

  private:
    buffered_reader m_in;
    Record m_current{};
    bool m_exhausted = false;
};

}  // namespace detail

template <class Record, class Less>
em_sort_report em_sort_file(const std::filesystem::path &input,
                            const std::filesystem::path &output, Less less,
                            const memory_budget &budget, scratch_manager &scratch,
                            io_stats &stats, const std::string &stream) {
    constexpr std::size_t rec_bytes = Record::encoded_size;
    const std::uint64_t block = budget.block_bytes;
    if (budget.ram_bytes < 3 * block)
        throw budget_error("em_sort needs at least 3 block buffers");
    const std::size_t fan_in =
        static_cast<std::size_t>(std::max<std::uint64_t>(2, budget.ram_bytes / block - 1));

    em_sort_report report;

    // Run formation: fill RAM (minus one input and one output buffer),
    // stable-sort, spill.
    std::uint64_t run_ram = budget.ram_bytes - 2 * block;
    std::size_t run_capacity = std::max<std::uint64_t>(1, run_ram / sizeof(Record));
    std::vector<scratch_file> runs;
    {
        buffered_reader in(input, block, stats, stream);
        std::vector<Record> chunk;
        chunk.reserve(run_capacity);
        std::uint8_t rec[rec_bytes];
        bool eof = false;
        while (!eof) {
            chunk.clear();
            while (chunk.size() < run_capacity) {
                if (!in.read_record(rec, rec_bytes)) {
                    eof = true;
                    break;
                }
                chunk.push_back(Record::decode(rec));
            }
            if (chunk.empty()) break;
            std::stable_sort(chunk.begin(), chunk.end(), less);
            report.records += chunk.size();
            scratch_file run = scratch.create("sortrun");
            buffered_writer out(run.path(), block, stats, stream, run.grow_hook());
            for (const Record &r : chunk) {
                r.encode(rec);
                out.write(rec, rec_bytes);
            }
            out.close();
            runs.push_back(std::move(run));
        }
    }
    report.initial_runs = static_cast<std::uint32_t>(runs.size());

    auto merge_group = [&](std::vector<scratch_file> group, buffered_writer &out) {
        std::vector<std::unique_ptr<detail::run_cursor<Record>>> cursors;
        cursors.reserve(group.size());
        for (auto &g : group)
            cursors.push_back(std::make_unique<detail::run_cursor<Record>>(g.path(), block,
                                                                           stats, stream));
        // Min-heap over (record, run index); equal records favor the lower
        // run index, which preserves stability across rounds.
        auto heap_less = [&](std::size_t x, std::size_t y) {
            const Record &rx = cursors[x]->current();
            const Record &ry = cursors[y]->current();
            if (less(rx, ry)) return false;
            if (less(ry, rx)) return true;
            return x > y;  // reversed: std::priority_queue is a max-heap
        };
        std::priority_queue<std::size_t, std::vector<std::size_t>, decltype(heap_less)> heap(
            heap_less);
        for (std::size_t i = 0; i < cursors.size(); ++i)
            if (!cursors[i]->exhausted()) heap.push(i);
        std::uint8_t rec[rec_bytes];
        while (!heap.empty()) {
            std::size_t i = heap.top();
            heap.pop();
            cursors[i]->current().encode(rec);
            out.write(rec, rec_bytes);
            cursors[i]->advance();
            if (!cursors[i]->exhausted()) heap.push(i);
        }
        // group's scratch files are removed as the vector dies
    };

    // Merge rounds until at most fan_in runs remain, then a final merge
    // straight into the output file.
    while (runs.size() > fan_in) {
        ++report.merge_rounds;
        std::vector<scratch_file> next;
        for (std::size_t base = 0; base < runs.size(); base += fan_in) {
            std::size_t end = std::min(runs.size(), base + fan_in);
            std::vector<scratch_file> group;
            for (std::size_t i = base; i < end; ++i) group.push_back(std::move(runs[i]));
            scratch_file merged = scratch.create("sortmerge");
            buffered_writer out(merged.path(), block, stats, stream, merged.grow_hook());
            merge_group(std::move(group), out);
            out.close();
            next.push_back(std::move(merged));
        }
        runs = std::move(next);
    }
    {
        if (!runs.empty()) ++report.merge_rounds;
        buffered_writer out(output, block, stats, stream);
        merge_group(std::move(runs), out);
        out.close();
    }
    return report;
}

}  // namespace lzdec

#endif  // LZDEC_EM_SORT_HPP_INCLUDED
