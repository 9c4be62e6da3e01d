#ifndef LZDEC_PARSING_IO_HPP_INCLUDED
#define LZDEC_PARSING_IO_HPP_INCLUDED

#include <cstdint>
#include <filesystem>
#include <memory>
#include <optional>
#include <vector>

#include "lzdec/file_io.hpp"
#include "lzdec/types.hpp"

namespace lzdec {

// .lz77 container: a 16-byte header (8-byte magic "LZ77EMD1", one width byte,
// 7 reserved zero bytes) followed by records of 2*width bytes each, holding
// the (a, b) pair of one phrase as little-endian fixed-width integers.
inline constexpr char k_parsing_magic[8] = {'L', 'Z', '7', '7', 'E', 'M', 'D', '1'};
inline constexpr std::uint64_t k_parsing_header_bytes = 16;

inline bool parsing_width_ok(unsigned width) { return width == 5 || width == 8; }

inline std::uint64_t parsing_record_bytes(unsigned width) { return 2ull * width; }

// Byte offset of record `index` inside a .lz77 file.
inline std::uint64_t parsing_record_offset(unsigned width, std::uint64_t index) {
    return k_parsing_header_bytes + index * parsing_record_bytes(width);
}

class parsing_writer {
  public:
    parsing_writer(const std::filesystem::path &path, unsigned width, io_stats &stats,
                   std::uint64_t buffer_bytes = 1ull << 20,
                   const std::string &stream = "parse_out");

    void put(const phrase &ph);
    std::uint64_t phrases_written() const { return m_count; }
    void close() { m_out.close(); }

  private:
    buffered_writer m_out;
    unsigned m_width;
    std::uint64_t m_limit;
    std::uint64_t m_count = 0;
};

// Streaming reader; assigns absolute positions cumulatively from 0 and
// validates each record (literal byte < 256, repeat source strictly before
// the phrase, no truncated records). Constant RAM beyond one buffer.
class parsing_reader {
  public:
    parsing_reader(const std::filesystem::path &path, io_stats &stats,
                   std::uint64_t buffer_bytes = 1ull << 20,
                   const std::string &stream = "parse_in");

    std::optional<located_phrase> next();

    unsigned width() const { return m_width; }
    std::uint64_t next_pos() const { return m_pos; }
    const parsing_stats &stats_so_far() const { return m_stats; }
    std::uint64_t bytes_consumed() const { return m_in.bytes_consumed(); }
    std::uint64_t file_bytes() const { return m_file_bytes; }

    // Jump to a given record index; `pos_at_index` is the text position of
    // that phrase (callers obtain it from a prior scan).
    void seek_record(std::uint64_t index, std::uint64_t pos_at_index);

  private:
    buffered_reader m_in;
    unsigned m_width = 5;
    std::uint64_t m_pos = 0;
    std::uint64_t m_file_bytes = 0;
    parsing_stats m_stats;
};

// One full validation pass; returns the totals.
parsing_stats scan_parsing(const std::filesystem::path &path, io_stats &stats,
                           std::uint64_t buffer_bytes = 1ull << 20,
                           const std::string &stream = "parse_scan");

// Convenience forms used by tests and the factorizer.
void write_parsing_file(const std::filesystem::path &path, const std::vector<phrase> &phrases,
                        unsigned width, io_stats &stats);
std::vector<located_phrase> read_parsing_file(const std::filesystem::path &path, io_stats &stats,
                                              parsing_stats *out_stats = nullptr);

}  // namespace lzdec

#endif  // LZDEC_PARSING_IO_HPP_INCLUDED
