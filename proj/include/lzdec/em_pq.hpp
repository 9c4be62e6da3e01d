#ifndef LZDEC_EM_PQ_HPP_INCLUDED
#define LZDEC_EM_PQ_HPP_INCLUDED

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "lzdec/file_io.hpp"
#include "lzdec/io_stats.hpp"
#include "lzdec/scratch.hpp"

namespace lzdec {

// Merge-based external-memory priority queue for (key, payload) items with
// bounded payload size.
//
// Inserts accumulate in a RAM arena; when it fills, the batch is spilled as
// a sorted run. Runs are organized in levels and compacted by k-way merges
// so the number of open run cursors stays within the RAM budget.
// extract_min() returns the globally minimal key over the arena and all run
// fronts; ties are resolved by insertion order.
//
// The queue is monotone: inserting a key smaller than the last extracted key
// is a contract violation. (The segment decoder only ever inserts phrases
// for future segments, so a violation there means an algorithm bug.)
class external_pq {
  public:
    struct config {
        std::uint64_t ram_bytes = 1ull << 20;
        std::uint64_t io_unit = 64ull << 10;
        std::uint64_t payload_max = 16;
    };

    struct item_view {
        std::uint64_t key;
        std::span<const std::uint8_t> payload;
    };

    external_pq(const config &cfg, scratch_manager &scratch, io_stats &stats,
                const std::string &stream);
    ~external_pq();

    void insert(std::uint64_t key, std::span<const std::uint8_t> payload);
    std::optional<item_view> extract_min();

    bool empty() const { return m_size == 0; }
    std::uint64_t size() const { return m_size; }
    std::uint64_t payload_bytes_inserted() const { return m_payload_in; }
    std::uint64_t payload_max() const { return m_cfg.payload_max; }

  private:
    struct arena_item;
    struct run_state;
    struct arena_greater;

    void spill();
    void compact_level(std::size_t level);

    config m_cfg;
    scratch_manager *m_scratch;
    io_stats *m_stats;
    std::string m_stream;

    std::vector<arena_item> m_arena;        // min-heap by (key, seq)
    std::vector<std::uint8_t> m_slabs;      // payload slots
    std::vector<std::uint32_t> m_free_slots;
    std::size_t m_arena_capacity = 0;

    std::vector<std::unique_ptr<run_state>> m_runs;  // all live runs, by id
    std::vector<std::vector<std::size_t>> m_levels;  // run ids per level
    std::vector<std::size_t> m_run_heap;             // ids, min-heap by front
    std::size_t m_fan = 8;

    std::uint64_t m_size = 0;
    std::uint64_t m_seq = 0;
    std::uint64_t m_payload_in = 0;
    std::uint64_t m_last_extracted = 0;
    bool m_extracted_any = false;
    std::vector<std::uint8_t> m_out_payload;
};

}  // namespace lzdec

#endif  // LZDEC_EM_PQ_HPP_INCLUDED
