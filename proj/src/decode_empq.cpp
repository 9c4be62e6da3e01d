#include <algorithm>
#include <cstring>
#include <vector>

#include "decode_internal.hpp"
#include "lzdec/em_pq.hpp"
#include "lzdec/em_sort.hpp"

namespace lzdec {

using namespace detail;

namespace {

struct empq_layout {
    std::uint64_t unit = 0;
    std::uint64_t b = 0;        // segment size
    std::uint64_t pq_ram = 0;   // external PQ budget
    std::uint64_t sort_ram = 0; // R_far sort budget (phase-separate)
};

empq_layout solve_empq_layout(const decode_options &opts) {
    const std::uint64_t ram = opts.budget.ram_bytes;
    empq_layout lay;
    lay.unit = effective_unit(opts.budget);
    // Four sequential streams are open during recovery (sorted far, near,
    // literals, output).
    const std::uint64_t fixed = 4 * lay.unit;
    if (opts.segment_size) {
        lay.b = *opts.segment_size;
        if (lay.b < 1) throw budget_error("segment size must be at least 1");
    } else {
        if (ram < fixed + 2 * lay.unit)
            throw budget_error("RAM budget too small for the pq decoder streams");
        lay.b = std::max(lay.unit, (ram / 2) / lay.unit * lay.unit);
    }
    // The segment array must leave room for the streams and a PQ buffer.
    if (lay.b + fixed >= ram + ram / 8)
        throw budget_error("segment size " + std::to_string(lay.b) +
                           " does not fit the RAM budget " + std::to_string(ram));
    lay.pq_ram = std::max<std::uint64_t>(4 * lay.unit, ram > lay.b + fixed ? ram - lay.b - fixed
                                                                           : ram / 4);
    lay.sort_ram = std::max<std::uint64_t>(3 * lay.unit, ram - 2 * lay.unit);
    return lay;
}

}  // namespace

decode_report decode_empq(const std::filesystem::path &parsing,
                          const std::filesystem::path &output, const decode_options &opts) {
    wallclock clock;
    io_stats stats;
    decode_report report;
    report.algorithm = "pq";
    if (opts.tmp_dir.empty()) throw contract_error("the pq decoder needs a scratch directory");
    if (opts.lmax < 1) throw contract_error("lmax must be at least 1");

    empq_layout lay = solve_empq_layout(opts);
    scratch_manager scratch(opts.tmp_dir);

    parsing_stats totals = scan_parsing(parsing, stats, lay.unit, k_parse_scan);
    check_scratch_limit(totals.n);
    report.n = totals.n;
    report.z = totals.z;
    const segment_geometry geom(totals.n, lay.b);

    // Split phrases at segment/source boundaries and route the pieces:
    // far repeats (source more than b before the phrase), near repeats,
    // literals.
    scratch_file far_raw = scratch.create("far");
    scratch_file near_file = scratch.create("near");
    scratch_file lit_file = scratch.create("lit");
    std::uint64_t far_pieces = 0;
    {
        buffered_writer far_out(far_raw.path(), lay.unit, stats, k_split_far,
                                far_raw.grow_hook());
        buffered_writer near_out(near_file.path(), lay.unit, stats, k_split_near,
                                 near_file.grow_hook());
        buffered_writer lit_out(lit_file.path(), lay.unit, stats, k_split_lit,
                                lit_file.grow_hook());
        parsing_reader in(parsing, stats, lay.unit, k_parse_in);
        std::uint8_t rec[piece_record::encoded_size];
        while (auto ph = in.next()) {
            split_phrase(*ph, geom, [&](const located_phrase &piece) {
                if (piece.literal) {
                    literal_record lr{piece.pos, piece.ch};
                    std::uint8_t lbuf[literal_record::encoded_size];
                    lr.encode(lbuf);
                    lit_out.write(lbuf, sizeof(lbuf));
                    return;
                }
                piece_record pr{piece.source, piece.pos, piece.length};
                pr.encode(rec);
                if (is_far(piece, lay.b)) {
                    far_out.write(rec, sizeof(rec));
                    ++far_pieces;
                    report.sum_far_len += piece.length;
                } else {
                    near_out.write(rec, sizeof(rec));
                }
            });
        }
        far_out.close();
        near_out.close();
        lit_out.close();
    }

    // Sort far pieces by source position (phrase position as tie-break for
    // determinism).
    scratch_file far_sorted = scratch.create("far_sorted");
    {
        memory_budget sort_budget{lay.sort_ram, lay.unit};
        auto less = [](const piece_record &a, const piece_record &b) {
            if (a.source != b.source) return a.source < b.source;
            return a.pos < b.pos;
        };
        em_sort_file<piece_record>(far_raw.path(), far_sorted.path(), less, sort_budget, scratch,
                                   stats, k_sort_far);
        // em_sort writes to a plain path; account the result file manually.
        scratch.hand_over(far_sorted, std::filesystem::file_size(far_sorted.path()));
        far_raw.remove();
    }

    // Recovery, one segment at a time, strictly left to right.
    {
        external_pq::config pq_cfg;
        pq_cfg.ram_bytes = lay.pq_ram;
        pq_cfg.io_unit = lay.unit;
        pq_cfg.payload_max = opts.lmax;
        external_pq pq(pq_cfg, scratch, stats, k_pq);

        record_stream<piece_record> far_in(far_sorted.path(), lay.unit, stats, k_sort_far);
        record_stream<piece_record> near_in(near_file.path(), lay.unit, stats, k_split_near);
        record_stream<literal_record> lit_in(lit_file.path(), lay.unit, stats, k_split_lit);
        buffered_writer out(output, lay.unit, stats, k_text_out);

        std::vector<std::uint8_t> y(lay.b);
        std::vector<std::uint8_t> chunk(opts.lmax);
        const std::uint64_t m = geom.segment_count();

        for (std::uint64_t j = 0; j < m; ++j) {
            const std::uint64_t seg_start = geom.segment_start(j);
            const std::uint64_t seg_end = geom.segment_end(j);
            std::uint64_t pos = seg_start;
            while (pos < seg_end) {
                const std::uint64_t off = pos - seg_start;
                if (!lit_in.empty() && lit_in.front().pos == pos) {
                    y[off] = lit_in.take().ch;
                    ++pos;
                } else if (!near_in.empty() && near_in.front().pos == pos) {
                    piece_record pr = near_in.take();
                    const std::uint64_t d = pos - pr.source;
                    if (pr.source >= seg_start) {
                        // Source starts in the recovered prefix Y[0..off).
                        const std::uint64_t s_off = pr.source - seg_start;
                        if (opts.runtime_checks && s_off >= off)
                            throw invariant_error("near source not in recovered prefix, segment " +
                                                  std::to_string(j));
                        for (std::uint64_t t = 0; t < pr.length; ++t)
                            y[off + t] = y[s_off + t];
                    } else {
                        // Source is contained in the untouched tail holding
                        // the previous segment.
                        const std::uint64_t s_idx = off + lay.b - d;
                        if (opts.runtime_checks &&
                            (d > lay.b || s_idx < off || s_idx + pr.length > lay.b))
                            throw invariant_error("near source outside Y tail, segment " +
                                                  std::to_string(j));
                        for (std::uint64_t t = 0; t < pr.length; ++t)
                            y[off + t] = y[s_idx + t];
                    }
                    pos += pr.length;
                } else {
                    // Must be the next chunk of a far phrase.
                    auto item = pq.extract_min();
                    if (!item)
                        throw invariant_error("no phrase available at position " +
                                              std::to_string(pos) + ", segment " +
                                              std::to_string(j));
                    if (item->key != pos)
                        throw invariant_error("far chunk at position " +
                                              std::to_string(item->key) + " does not match " +
                                              std::to_string(pos) + ", segment " +
                                              std::to_string(j));
                    std::memcpy(y.data() + off, item->payload.data(), item->payload.size());
                    report.far_payload_read += item->payload.size();
                    pos += item->payload.size();
                }
            }
            out.write(y.data(), seg_end - seg_start);

            // Feed the queue: far pieces whose source lies in this segment,
            // in one sequential pass over the sorted stream, chunked to
            // lmax.
            while (!far_in.empty() && far_in.front().source < seg_end) {
                piece_record pr = far_in.take();
                if (pr.source < seg_start)
                    throw invariant_error("far source before its segment, segment " +
                                          std::to_string(j));
                if (pr.source + pr.length > seg_end)
                    throw invariant_error("far source crosses segment end, segment " +
                                          std::to_string(j));
                std::uint64_t done = 0;
                while (done < pr.length) {
                    std::uint64_t cl = std::min(opts.lmax, pr.length - done);
                    std::memcpy(chunk.data(), y.data() + (pr.source - seg_start) + done, cl);
                    pq.insert(pr.pos + done, {chunk.data(), cl});
                    done += cl;
                }
            }
        }
        report.pq_payload_inserted = pq.payload_bytes_inserted();
        report.far_payload_written = pq.payload_bytes_inserted();

        if (!pq.empty())
            throw invariant_error("priority queue not drained after the last segment");
        if (!far_in.empty() || !near_in.empty() || !lit_in.empty())
            throw invariant_error("phrase streams not fully consumed");
        if (report.far_payload_read != report.sum_far_len ||
            report.far_payload_written != report.sum_far_len)
            throw invariant_error("far byte conservation violated");
        (void)far_pieces;
        out.close();
    }

    finish_report(report, clock, stats, scratch.peak_bytes());
    return report;
}

}  // namespace lzdec
