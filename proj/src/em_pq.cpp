#include "lzdec/em_pq.hpp"

#include <algorithm>
#include <cstring>

#include "lzdec/errors.hpp"

namespace lzdec {

namespace {
constexpr std::size_t k_run_header = 8 + 8 + 4;  // key, seq, payload length
}

struct external_pq::arena_item {
    std::uint64_t key;
    std::uint64_t seq;
    std::uint32_t len;
    std::uint32_t slot;
};

struct external_pq::run_state {
    scratch_file file;
    std::unique_ptr<buffered_reader> in;
    std::uint64_t key = 0;
    std::uint64_t seq = 0;
    std::uint32_t len = 0;
    std::vector<std::uint8_t> payload;
    bool exhausted = false;
    std::size_t level = 0;

    bool advance() {
        std::uint8_t head[k_run_header];
        if (!in->read_record(head, sizeof(head))) {
            exhausted = true;
            return false;
        }
        key = load_uint(head, 8);
        seq = load_uint(head + 8, 8);
        len = static_cast<std::uint32_t>(load_uint(head + 16, 4));
        payload.resize(len);
        if (len && !in->read_record(payload.data(), len))
            throw format_error("truncated payload in priority-queue run");
        return true;
    }
};

external_pq::external_pq(const config &cfg, scratch_manager &scratch, io_stats &stats,
                         const std::string &stream)
    : m_cfg(cfg), m_scratch(&scratch), m_stats(&stats), m_stream(stream) {
    std::uint64_t slot = m_cfg.payload_max + sizeof(arena_item);
    m_arena_capacity = std::max<std::uint64_t>(16, (m_cfg.ram_bytes / 2) / slot);
    std::uint64_t cursor_budget = std::max<std::uint64_t>(4, (m_cfg.ram_bytes / 2) / m_cfg.io_unit);
    // Allow ~4 levels of runs before merges are forced by the cursor budget.
    m_fan = std::max<std::uint64_t>(2, cursor_budget / 4);
    m_arena.reserve(m_arena_capacity);
    m_slabs.resize(m_arena_capacity * m_cfg.payload_max);
    m_out_payload.resize(m_cfg.payload_max);
    m_free_slots.reserve(m_arena_capacity);
    for (std::size_t s = m_arena_capacity; s-- > 0;)
        m_free_slots.push_back(static_cast<std::uint32_t>(s));
}

external_pq::~external_pq() = default;

// Min-heap comparator (std::*_heap build max-heaps, so invert).
struct external_pq::arena_greater {
    bool operator()(const arena_item &x, const arena_item &y) const {
        if (x.key != y.key) return x.key > y.key;
        return x.seq > y.seq;
    }
};

void external_pq::insert(std::uint64_t key, std::span<const std::uint8_t> payload) {
    if (payload.size() > m_cfg.payload_max)
        throw contract_error("priority-queue payload of " + std::to_string(payload.size()) +
                             " bytes exceeds the configured maximum of " +
                             std::to_string(m_cfg.payload_max));
    if (m_extracted_any && key < m_last_extracted)
        throw contract_error("monotone priority queue: insert key " + std::to_string(key) +
                             " is below the last extracted key " +
                             std::to_string(m_last_extracted));
    if (m_free_slots.empty()) spill();

    arena_item it;
    it.key = key;
    it.seq = m_seq++;
    it.len = static_cast<std::uint32_t>(payload.size());
    it.slot = m_free_slots.back();
    m_free_slots.pop_back();
    std::memcpy(m_slabs.data() + std::uint64_t(it.slot) * m_cfg.payload_max, payload.data(),
                payload.size());
    m_arena.push_back(it);
    std::push_heap(m_arena.begin(), m_arena.end(), arena_greater{});
    ++m_size;
    m_payload_in += payload.size();
}

void external_pq::spill() {
    if (m_arena.empty()) return;
    // Heap order is not full order: sort a copy by (key, seq).
    std::vector<arena_item> sorted(m_arena);
    std::sort(sorted.begin(), sorted.end(), [](const arena_item &x, const arena_item &y) {
        if (x.key != y.key) return x.key < y.key;
        return x.seq < y.seq;
    });

    auto run = std::make_unique<run_state>();
    run->file = m_scratch->create("pqrun");
    {
        buffered_writer out(run->file.path(), m_cfg.io_unit, *m_stats, m_stream,
                            run->file.grow_hook());
        std::uint8_t head[k_run_header];
        for (const arena_item &it : sorted) {
            store_uint(head, it.key, 8);
            store_uint(head + 8, it.seq, 8);
            store_uint(head + 16, it.len, 4);
            out.write(head, sizeof(head));
            out.write(m_slabs.data() + std::uint64_t(it.slot) * m_cfg.payload_max, it.len);
        }
        out.close();
    }
    run->in = std::make_unique<buffered_reader>(run->file.path(), m_cfg.io_unit, *m_stats,
                                                m_stream);
    run->advance();
    run->level = 0;

    m_arena.clear();
    m_free_slots.clear();
    for (std::size_t s = m_arena_capacity; s-- > 0;)
        m_free_slots.push_back(static_cast<std::uint32_t>(s));
    if (m_levels.empty()) m_levels.emplace_back();
    std::size_t id = m_runs.size();
    m_runs.push_back(std::move(run));
    m_levels[0].push_back(id);
    m_run_heap.push_back(id);
    std::push_heap(m_run_heap.begin(), m_run_heap.end(), [this](std::size_t x, std::size_t y) {
        const run_state &rx = *m_runs[x];
        const run_state &ry = *m_runs[y];
        if (rx.key != ry.key) return rx.key > ry.key;
        return rx.seq > ry.seq;
    });
    if (m_levels[0].size() > m_fan) compact_level(0);
}

void external_pq::compact_level(std::size_t level) {
    // Merge every live run of this level (including partially consumed ones)
    // into a single run one level up, then rebuild the cursor heap.
    std::vector<std::size_t> ids = m_levels[level];
    if (ids.size() < 2) return;

    auto merged = std::make_unique<run_state>();
    merged->file = m_scratch->create("pqmerge");
    {
        buffered_writer out(merged->file.path(), m_cfg.io_unit, *m_stats, m_stream,
                            merged->file.grow_hook());
        auto heap_less = [this](std::size_t x, std::size_t y) {
            const run_state &rx = *m_runs[x];
            const run_state &ry = *m_runs[y];
            if (rx.key != ry.key) return rx.key > ry.key;
            return rx.seq > ry.seq;
        };
        std::vector<std::size_t> heap;
        for (std::size_t id : ids)
            if (!m_runs[id]->exhausted) heap.push_back(id);
        std::make_heap(heap.begin(), heap.end(), heap_less);
        std::uint8_t head[k_run_header];
        while (!heap.empty()) {
            std::pop_heap(heap.begin(), heap.end(), heap_less);
            std::size_t id = heap.back();
            heap.pop_back();
            run_state &r = *m_runs[id];
            store_uint(head, r.key, 8);
            store_uint(head + 8, r.seq, 8);
            store_uint(head + 16, r.len, 4);
            out.write(head, sizeof(head));
            out.write(r.payload.data(), r.len);
            if (r.advance()) {
                heap.push_back(id);
                std::push_heap(heap.begin(), heap.end(), heap_less);
            }
        }
        out.close();
    }

    // Drop source runs.
    for (std::size_t id : ids) m_runs[id].reset();
    m_levels[level].clear();

    merged->in = std::make_unique<buffered_reader>(merged->file.path(), m_cfg.io_unit, *m_stats,
                                                   m_stream);
    merged->advance();
    merged->level = level + 1;
    std::size_t id = m_runs.size();
    m_runs.push_back(std::move(merged));
    if (m_levels.size() <= level + 1) m_levels.resize(level + 2);
    m_levels[level + 1].push_back(id);
    if (m_levels[level + 1].size() > m_fan) compact_level(level + 1);

    // Rebuild the extraction heap from live, non-exhausted runs.
    m_run_heap.clear();
    for (std::size_t i = 0; i < m_runs.size(); ++i)
        if (m_runs[i] && !m_runs[i]->exhausted) m_run_heap.push_back(i);
    std::make_heap(m_run_heap.begin(), m_run_heap.end(),
                   [this](std::size_t x, std::size_t y) {
                       const run_state &rx = *m_runs[x];
                       const run_state &ry = *m_runs[y];
                       if (rx.key != ry.key) return rx.key > ry.key;
                       return rx.seq > ry.seq;
                   });
}

std::optional<external_pq::item_view> external_pq::extract_min() {
    if (m_size == 0) return std::nullopt;

    auto run_front_less_than_arena = [&]() {
        if (m_run_heap.empty()) return false;
        if (m_arena.empty()) return true;
        const run_state &r = *m_runs[m_run_heap.front()];
        const arena_item &a = m_arena.front();
        if (r.key != a.key) return r.key < a.key;
        return r.seq < a.seq;
    };

    auto heap_less = [this](std::size_t x, std::size_t y) {
        const run_state &rx = *m_runs[x];
        const run_state &ry = *m_runs[y];
        if (rx.key != ry.key) return rx.key > ry.key;
        return rx.seq > ry.seq;
    };

    item_view out;
    if (run_front_less_than_arena()) {
        std::pop_heap(m_run_heap.begin(), m_run_heap.end(), heap_less);
        std::size_t id = m_run_heap.back();
        m_run_heap.pop_back();
        run_state &r = *m_runs[id];
        out.key = r.key;
        std::memcpy(m_out_payload.data(), r.payload.data(), r.len);
        out.payload = std::span<const std::uint8_t>(m_out_payload.data(), r.len);
        if (r.advance()) {
            m_run_heap.push_back(id);
            std::push_heap(m_run_heap.begin(), m_run_heap.end(), heap_less);
        } else {
            // Fully consumed: delete the run file and its level slot.
            auto &lvl = m_levels[r.level];
            lvl.erase(std::remove(lvl.begin(), lvl.end(), id), lvl.end());
            m_runs[id].reset();
        }
    } else {
        const arena_item a = m_arena.front();
        std::pop_heap(m_arena.begin(), m_arena.end(), arena_greater{});
        m_arena.pop_back();
        out.key = a.key;
        std::memcpy(m_out_payload.data(),
                    m_slabs.data() + std::uint64_t(a.slot) * m_cfg.payload_max, a.len);
        out.payload = std::span<const std::uint8_t>(m_out_payload.data(), a.len);
        m_free_slots.push_back(a.slot);
    }
    --m_size;
    m_last_extracted = out.key;
    m_extracted_any = true;
    return out;
}

}  // namespace lzdec
