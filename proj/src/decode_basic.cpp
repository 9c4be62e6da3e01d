#include <cstring>
#include <vector>

#include "decode_internal.hpp"

namespace lzdec {

using namespace detail;

decode_report decode_ram(const std::filesystem::path &parsing,
                         const std::filesystem::path &output, const decode_options &opts) {
    wallclock clock;
    io_stats stats;
    decode_report report;
    report.algorithm = "ram";

    std::uint64_t unit = effective_unit(opts.budget);
    parsing_stats totals = scan_parsing(parsing, stats, unit, k_parse_scan);
    if (totals.n > opts.budget.ram_bytes)
        throw budget_error("text of " + std::to_string(totals.n) +
                           " bytes exceeds the RAM budget of " +
                           std::to_string(opts.budget.ram_bytes) +
                           "; use an EM decoder (--algorithm naive, pq or plain)");
    report.n = totals.n;
    report.z = totals.z;

    std::vector<std::uint8_t> text(totals.n);
    {
        parsing_reader in(parsing, stats, unit, k_parse_in);
        std::uint64_t pos = 0;
        while (auto ph = in.next()) {
            if (ph->literal) {
                text[pos++] = ph->ch;
            } else {
                // Strict left-to-right byte copy: correct under self-overlap.
                std::uint64_t p = ph->source;
                for (std::uint64_t t = 0; t < ph->length; ++t) text[pos + t] = text[p + t];
                pos += ph->length;
            }
        }
    }
    {
        buffered_writer out(output, unit, stats, k_text_out);
        out.write(text.data(), text.size());
        out.close();
    }
    finish_report(report, clock, stats, 0);
    return report;
}

namespace {

// Sliding write-back window over the output file. The ring holds the last W
// text bytes; everything older has been flushed and is read back with
// positioned reads.
class window_decoder {
  public:
    window_decoder(const std::filesystem::path &output, std::uint64_t window_bytes,
                   std::uint64_t unit, io_stats &stats)
        : m_file(file_handle::create_write(output, k_text_out)),
          m_ring(window_bytes),
          m_unit(unit),
          m_stats(&stats) {}

    std::uint64_t window() const { return m_ring.size(); }
    std::uint64_t pos() const { return m_pos; }

    void put(std::uint8_t b) {
        if (m_pos - m_written == m_ring.size()) flush_chunk();
        m_ring[m_pos % m_ring.size()] = b;
        ++m_pos;
    }

    std::uint8_t ring_byte(std::uint64_t text_pos) const {
        return m_ring[text_pos % m_ring.size()];
    }

    // Copies a source range that lies entirely behind the window into `dst`.
    void read_old(std::uint64_t offset, std::uint8_t *dst, std::size_t len) {
        m_file.pread_exact(offset, dst, len);
        m_stats->note_read(k_text_rand_in, len);
    }

    std::uint64_t flushed() const { return m_written; }

    void finish() {
        while (m_written < m_pos) flush_chunk();
        m_file.close();
    }

  private:
    void flush_chunk() {
        std::uint64_t want = std::min<std::uint64_t>(m_unit, m_pos - m_written);
        std::uint64_t start = m_written % m_ring.size();
        std::uint64_t first = std::min<std::uint64_t>(want, m_ring.size() - start);
        m_file.pwrite_all(m_written, m_ring.data() + start, first);
        if (first < want) m_file.pwrite_all(m_written + first, m_ring.data(), want - first);
        m_stats->note_write(k_text_out, want);
        m_written += want;
    }

    file_handle m_file;
    std::vector<std::uint8_t> m_ring;
    std::uint64_t m_unit;
    io_stats *m_stats;
    std::uint64_t m_pos = 0;      // next text position
    std::uint64_t m_written = 0;  // flushed prefix length
};

}  // namespace

decode_report decode_naive(const std::filesystem::path &parsing,
                           const std::filesystem::path &output, const decode_options &opts) {
    wallclock clock;
    io_stats stats;
    decode_report report;
    report.algorithm = "naive";

    std::uint64_t unit = effective_unit(opts.budget);
    // Reserve the parsing reader buffer and one transfer buffer; the rest of
    // the RAM budget is the write-back window.
    std::uint64_t window = std::max<std::uint64_t>(4 * unit, opts.budget.ram_bytes - 2 * unit);
    window_decoder out(output, window, unit, stats);

    parsing_reader in(parsing, stats, unit, k_parse_in);
    std::vector<std::uint8_t> transfer(unit);
    while (auto ph = in.next()) {
        if (ph->literal) {
            out.put(ph->ch);
            continue;
        }
        std::uint64_t d = ph->pos - ph->source;
        if (d <= window) {
            // Source stays inside the ring for the whole copy (self-overlap
            // included): plain bytewise window copy.
            for (std::uint64_t t = 0; t < ph->length; ++t)
                out.put(out.ring_byte(out.pos() - d));
        } else {
            // Source is behind the window at every step; the flushed prefix
            // always covers pos - window, so at least d - window source
            // bytes are on disk each iteration.
            std::uint64_t remaining = ph->length;
            while (remaining > 0) {
                std::uint64_t src = out.pos() - d;
                std::uint64_t take = std::min<std::uint64_t>(remaining, transfer.size());
                take = std::min(take, out.flushed() - src);
                out.read_old(src, transfer.data(), static_cast<std::size_t>(take));
                for (std::uint64_t t = 0; t < take; ++t) out.put(transfer[t]);
                remaining -= take;
            }
        }
    }
    out.finish();

    report.n = in.stats_so_far().n;
    report.z = in.stats_so_far().z;
    finish_report(report, clock, stats, 0);
    return report;
}

}  // namespace lzdec
