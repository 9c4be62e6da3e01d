#include "lzdec/parsing_io.hpp"

#include <cstring>

namespace lzdec {

parsing_writer::parsing_writer(const std::filesystem::path &path, unsigned width, io_stats &stats,
                               std::uint64_t buffer_bytes, const std::string &stream)
    : m_out(path, buffer_bytes, stats, stream),
      m_width(width),
      m_limit(uint_max_for_width(width)) {
    if (!parsing_width_ok(width))
        throw format_error("unsupported integer width " + std::to_string(width) +
                           " (expected 5 or 8)");
    std::uint8_t header[k_parsing_header_bytes] = {};
    std::memcpy(header, k_parsing_magic, sizeof(k_parsing_magic));
    header[8] = static_cast<std::uint8_t>(width);
    m_out.write(header, sizeof(header));
}

void parsing_writer::put(const phrase &ph) {
    if (ph.is_literal()) {
        if (ph.a >= 256)
            throw format_error("literal phrase with byte value " + std::to_string(ph.a));
    } else {
        if (ph.a > m_limit || ph.b > m_limit)
            throw format_error("phrase value does not fit in width " + std::to_string(m_width) +
                               ": (" + std::to_string(ph.a) + ", " + std::to_string(ph.b) + ")");
    }
    m_out.put_uint(ph.a, m_width);
    m_out.put_uint(ph.b, m_width);
    ++m_count;
}

namespace {

unsigned read_and_check_header(buffered_reader &in, std::uint64_t file_bytes) {
    std::uint8_t header[k_parsing_header_bytes];
    if (!in.read_record(header, sizeof(header)))
        throw format_error("missing .lz77 header");
    if (std::memcmp(header, k_parsing_magic, sizeof(k_parsing_magic)) != 0)
        throw format_error("bad magic in .lz77 header");
    unsigned width = header[8];
    if (!parsing_width_ok(width))
        throw format_error("unsupported integer width " + std::to_string(width) + " in header");
    for (int i = 9; i < 16; ++i)
        if (header[i] != 0) throw format_error("nonzero reserved bytes in .lz77 header");
    std::uint64_t body = file_bytes - k_parsing_header_bytes;
    if (body % parsing_record_bytes(width) != 0)
        throw format_error("parsing body length " + std::to_string(body) +
                           " is not a multiple of the record size");
    return width;
}

}  // namespace

parsing_reader::parsing_reader(const std::filesystem::path &path, io_stats &stats,
                               std::uint64_t buffer_bytes, const std::string &stream)
    : m_in(path, buffer_bytes, stats, stream) {
    m_file_bytes = std::filesystem::file_size(path);
    if (m_file_bytes < k_parsing_header_bytes)
        throw format_error("file too short for a .lz77 header");
    m_width = read_and_check_header(m_in, m_file_bytes);
}

std::optional<located_phrase> parsing_reader::next() {
    std::uint8_t rec[16];
    if (!m_in.read_record(rec, parsing_record_bytes(m_width)))
        return std::nullopt;
    std::uint64_t a = load_uint(rec, m_width);
    std::uint64_t b = load_uint(rec + m_width, m_width);
    located_phrase ph;
    if (b == 0) {
        if (a >= 256)
            throw format_error("literal phrase with first component " + std::to_string(a) +
                               " at position " + std::to_string(m_pos));
        ph = located_phrase::make_literal(m_pos, static_cast<std::uint8_t>(a));
    } else {
        if (a >= m_pos)
            throw format_error("repeat phrase with source " + std::to_string(a) +
                               " not before phrase position " + std::to_string(m_pos));
        ph = located_phrase::make_repeat(a, m_pos, b);
    }
    m_pos += ph.length;
    m_stats.account(ph);
    return ph;
}

void parsing_reader::seek_record(std::uint64_t index, std::uint64_t pos_at_index) {
    m_in.seek(parsing_record_offset(m_width, index));
    m_pos = pos_at_index;
    m_stats = parsing_stats{};  // stats restart from the seek point
}

parsing_stats scan_parsing(const std::filesystem::path &path, io_stats &stats,
                           std::uint64_t buffer_bytes, const std::string &stream) {
    parsing_reader reader(path, stats, buffer_bytes, stream);
    while (reader.next()) {
    }
    return reader.stats_so_far();
}

void write_parsing_file(const std::filesystem::path &path, const std::vector<phrase> &phrases,
                        unsigned width, io_stats &stats) {
    parsing_writer w(path, width, stats);
    for (const auto &ph : phrases) w.put(ph);
    w.close();
}

std::vector<located_phrase> read_parsing_file(const std::filesystem::path &path, io_stats &stats,
                                              parsing_stats *out_stats) {
    parsing_reader reader(path, stats);
    std::vector<located_phrase> out;
    while (auto ph = reader.next()) out.push_back(*ph);
    if (out_stats) *out_stats = reader.stats_so_far();
    return out;
}

}  // namespace lzdec
