#include "lzdec/file_io.hpp"

#include <fcntl.h>
#include <sys/stat.h>
#include <unistd.h>

#include <cerrno>
#include <cstring>
#include <utility>

namespace lzdec {

file_handle::file_handle(file_handle &&other) noexcept
    : m_fd(other.m_fd), m_stream(std::move(other.m_stream)) {
    other.m_fd = -1;
}

file_handle &file_handle::operator=(file_handle &&other) noexcept {
    if (this != &other) {
        close();
        m_fd = other.m_fd;
        m_stream = std::move(other.m_stream);
        other.m_fd = -1;
    }
    return *this;
}

file_handle::~file_handle() { close(); }

void file_handle::close() {
    if (m_fd >= 0) {
        ::close(m_fd);
        m_fd = -1;
    }
}

file_handle file_handle::open_read(const std::filesystem::path &path, const std::string &stream) {
    file_handle h;
    h.m_stream = stream;
    h.m_fd = ::open(path.c_str(), O_RDONLY);
    if (h.m_fd < 0)
        throw io_error(stream, "cannot open '" + path.string() + "' for reading", errno);
    return h;
}

file_handle file_handle::create_write(const std::filesystem::path &path, const std::string &stream) {
    file_handle h;
    h.m_stream = stream;
    h.m_fd = ::open(path.c_str(), O_WRONLY | O_CREAT | O_TRUNC, 0644);
    if (h.m_fd < 0)
        throw io_error(stream, "cannot create '" + path.string() + "'", errno);
    return h;
}

file_handle file_handle::open_read_write(const std::filesystem::path &path, const std::string &stream) {
    file_handle h;
    h.m_stream = stream;
    h.m_fd = ::open(path.c_str(), O_RDWR | O_CREAT, 0644);
    if (h.m_fd < 0)
        throw io_error(stream, "cannot open '" + path.string() + "' for read/write", errno);
    return h;
}

std::uint64_t file_handle::size() const {
    struct stat st;
    if (::fstat(m_fd, &st) != 0)
        throw io_error(m_stream, "fstat failed", errno);
    return static_cast<std::uint64_t>(st.st_size);
}

std::size_t file_handle::read_some(void *buf, std::size_t bytes) {
    std::size_t got = 0;
    auto *p = static_cast<std::uint8_t *>(buf);
    while (got < bytes) {
        ssize_t r = ::read(m_fd, p + got, bytes - got);
        if (r < 0) {
            if (errno == EINTR) continue;
            throw io_error(m_stream, "read failed", errno);
        }
        if (r == 0) break;
        got += static_cast<std::size_t>(r);
    }
    return got;
}

void file_handle::write_all(const void *buf, std::size_t bytes) {
    const auto *p = static_cast<const std::uint8_t *>(buf);
    std::size_t done = 0;
    while (done < bytes) {
        ssize_t w = ::write(m_fd, p + done, bytes - done);
        if (w < 0) {
            if (errno == EINTR) continue;
            throw io_error(m_stream, "write failed", errno);
        }
        done += static_cast<std::size_t>(w);
    }
}

void file_handle::pread_exact(std::uint64_t offset, void *buf, std::size_t bytes) {
    auto *p = static_cast<std::uint8_t *>(buf);
    std::size_t done = 0;
    while (done < bytes) {
        ssize_t r = ::pread(m_fd, p + done, bytes - done, static_cast<off_t>(offset + done));
        if (r < 0) {
            if (errno == EINTR) continue;
            throw io_error(m_stream, "pread failed", errno);
        }
        if (r == 0)
            throw io_error(m_stream, "pread past end of file");
        done += static_cast<std::size_t>(r);
    }
}

void file_handle::pwrite_all(std::uint64_t offset, const void *buf, std::size_t bytes) {
    const auto *p = static_cast<const std::uint8_t *>(buf);
    std::size_t done = 0;
    while (done < bytes) {
        ssize_t w = ::pwrite(m_fd, p + done, bytes - done, static_cast<off_t>(offset + done));
        if (w < 0) {
            if (errno == EINTR) continue;
            throw io_error(m_stream, "pwrite failed", errno);
        }
        done += static_cast<std::size_t>(w);
    }
}

void file_handle::seek(std::uint64_t offset) {
    if (::lseek(m_fd, static_cast<off_t>(offset), SEEK_SET) < 0)
        throw io_error(m_stream, "seek failed", errno);
}

buffered_writer::buffered_writer(const std::filesystem::path &path, std::uint64_t buffer_bytes,
                                 io_stats &stats, const std::string &stream, growth_hook on_flush)
    : m_file(file_handle::create_write(path, stream)),
      m_buf(buffer_bytes ? buffer_bytes : 1),
      m_stats(&stats),
      m_stream(stream),
      m_on_flush(std::move(on_flush)) {}

buffered_writer::~buffered_writer() {
    // Flushing in a destructor: swallow errors, close() is the checked path.
    try {
        close();
    } catch (...) {
    }
}

void buffered_writer::write(const void *data, std::size_t bytes) {
    const auto *p = static_cast<const std::uint8_t *>(data);
    while (bytes > 0) {
        std::size_t room = m_buf.size() - m_fill;
        std::size_t take = bytes < room ? bytes : room;
        std::memcpy(m_buf.data() + m_fill, p, take);
        m_fill += take;
        p += take;
        bytes -= take;
        if (m_fill == m_buf.size()) flush();
    }
}

void buffered_writer::put_uint(std::uint64_t value, unsigned width) {
    std::uint8_t tmp[8];
    store_uint(tmp, value, width);
    write(tmp, width);
}

void buffered_writer::flush() {
    if (m_fill == 0) return;
    m_file.write_all(m_buf.data(), m_fill);
    m_stats->note_write(m_stream, m_fill);
    m_total += m_fill;
    if (m_on_flush) m_on_flush(m_fill);
    m_fill = 0;
}

void buffered_writer::close() {
    if (m_file.is_open()) {
        flush();
        m_file.close();
    }
}

buffered_reader::buffered_reader(const std::filesystem::path &path, std::uint64_t buffer_bytes,
                                 io_stats &stats, const std::string &stream)
    : m_file(file_handle::open_read(path, stream)),
      m_buf(buffer_bytes ? buffer_bytes : 1),
      m_stats(&stats),
      m_stream(stream) {}

void buffered_reader::refill() {
    if (m_saw_eof) {
        m_fill = 0;
        m_pos = 0;
        return;
    }
    m_fill = m_file.read_some(m_buf.data(), m_buf.size());
    m_pos = 0;
    if (m_fill > 0)
        m_stats->note_read(m_stream, m_fill);
    if (m_fill < m_buf.size()) m_saw_eof = true;
}

std::size_t buffered_reader::read_some(void *dst, std::size_t bytes) {
    auto *p = static_cast<std::uint8_t *>(dst);
    std::size_t got = 0;
    while (got < bytes) {
        if (m_pos == m_fill) {
            refill();
            if (m_fill == 0) break;
        }
        std::size_t avail = m_fill - m_pos;
        std::size_t take = (bytes - got) < avail ? (bytes - got) : avail;
        std::memcpy(p + got, m_buf.data() + m_pos, take);
        m_pos += take;
        got += take;
    }
    m_consumed += got;
    return got;
}

bool buffered_reader::read_record(void *dst, std::size_t bytes) {
    std::size_t got = read_some(dst, bytes);
    if (got == 0) return false;
    if (got != bytes)
        throw format_error("truncated record on stream '" + m_stream + "'");
    return true;
}

std::uint64_t buffered_reader::get_uint(unsigned width) {
    std::uint8_t tmp[8];
    if (!read_record(tmp, width))
        throw format_error("unexpected end of stream '" + m_stream + "'");
    return load_uint(tmp, width);
}

bool buffered_reader::at_eof() {
    if (m_pos < m_fill) return false;
    refill();
    return m_fill == 0;
}

void buffered_reader::seek(std::uint64_t offset) {
    m_file.seek(offset);
    m_fill = 0;
    m_pos = 0;
    m_saw_eof = false;
}

}  // namespace lzdec
