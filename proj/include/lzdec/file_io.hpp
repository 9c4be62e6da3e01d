#ifndef LZDEC_FILE_IO_HPP_INCLUDED
#define LZDEC_FILE_IO_HPP_INCLUDED

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "lzdec/errors.hpp"
#include "lzdec/io_stats.hpp"

namespace lzdec {

// Thin RAII wrapper over a POSIX file descriptor. All transfers performed
// through it are explicit, so op counts in io_stats reflect real syscalls.
class file_handle {
  public:
    file_handle() = default;
    file_handle(file_handle &&other) noexcept;
    file_handle &operator=(file_handle &&other) noexcept;
    file_handle(const file_handle &) = delete;
    file_handle &operator=(const file_handle &) = delete;
    ~file_handle();

    static file_handle open_read(const std::filesystem::path &path, const std::string &stream);
    static file_handle create_write(const std::filesystem::path &path, const std::string &stream);
    static file_handle open_read_write(const std::filesystem::path &path, const std::string &stream);

    bool is_open() const { return m_fd >= 0; }
    void close();

    std::uint64_t size() const;

    // Sequential read at the handle's cursor; returns bytes read (0 at EOF).
    std::size_t read_some(void *buf, std::size_t bytes);
    void write_all(const void *buf, std::size_t bytes);

    // Positioned I/O; does not move the cursor.
    void pread_exact(std::uint64_t offset, void *buf, std::size_t bytes);
    void pwrite_all(std::uint64_t offset, const void *buf, std::size_t bytes);

    void seek(std::uint64_t offset);
    const std::string &stream_name() const { return m_stream; }

  private:
    int m_fd = -1;
    std::string m_stream;
};

// Sequential writer with a single RAM buffer of `buffer_bytes`. Data reaches
// disk in buffer-sized writes except the final partial flush. Every byte and
// op is accounted against `stats` under `stream`. The optional growth hook is
// invoked after each flush with the number of bytes that hit disk (scratch
// accounting uses it).
class buffered_writer {
  public:
    using growth_hook = std::function<void(std::uint64_t)>;

    buffered_writer(const std::filesystem::path &path, std::uint64_t buffer_bytes,
                    io_stats &stats, const std::string &stream, growth_hook on_flush = nullptr);
    ~buffered_writer();
    buffered_writer(const buffered_writer &) = delete;
    buffered_writer &operator=(const buffered_writer &) = delete;

    void write(const void *data, std::size_t bytes);
    void put_byte(std::uint8_t b) { write(&b, 1); }

    // Little-endian fixed-width unsigned integer, width in [1, 8].
    void put_uint(std::uint64_t value, unsigned width);

    std::uint64_t bytes_written() const { return m_total; }

    void flush();
    void close();  // flush + release the descriptor

  private:
    file_handle m_file;
    std::vector<std::uint8_t> m_buf;
    std::size_t m_fill = 0;
    std::uint64_t m_total = 0;
    io_stats *m_stats;
    std::string m_stream;
    growth_hook m_on_flush;
};

// Sequential reader mirroring buffered_writer: refills in buffer-sized reads
// (the tail read may be short).
class buffered_reader {
  public:
    buffered_reader(const std::filesystem::path &path, std::uint64_t buffer_bytes,
                    io_stats &stats, const std::string &stream);

    // Returns bytes copied out; 0 means end of file.
    std::size_t read_some(void *dst, std::size_t bytes);

    // True if `bytes` were read; false if EOF occurred before any byte.
    // EOF in the middle of the request is a format error (truncated record).
    bool read_record(void *dst, std::size_t bytes);

    std::uint64_t get_uint(unsigned width);

    bool at_eof();
    std::uint64_t bytes_consumed() const { return m_consumed; }

    // Repositions the underlying cursor; drops buffered data.
    void seek(std::uint64_t offset);

  private:
    void refill();

    file_handle m_file;
    std::vector<std::uint8_t> m_buf;
    std::size_t m_fill = 0;
    std::size_t m_pos = 0;
    bool m_saw_eof = false;
    std::uint64_t m_consumed = 0;
    io_stats *m_stats;
    std::string m_stream;
};

// Little-endian helpers shared by the record codecs.
inline void store_uint(std::uint8_t *dst, std::uint64_t value, unsigned width) {
    for (unsigned i = 0; i < width; ++i) dst[i] = static_cast<std::uint8_t>(value >> (8 * i));
}

inline std::uint64_t load_uint(const std::uint8_t *src, unsigned width) {
    std::uint64_t v = 0;
    for (unsigned i = 0; i < width; ++i) v |= static_cast<std::uint64_t>(src[i]) << (8 * i);
    return v;
}

// Largest value representable in `width` bytes.
inline std::uint64_t uint_max_for_width(unsigned width) {
    return width >= 8 ? ~std::uint64_t{0} : ((std::uint64_t{1} << (8 * width)) - 1);
}

}  // namespace lzdec

#endif  // LZDEC_FILE_IO_HPP_INCLUDED
