#ifndef LZDEC_IO_STATS_HPP_INCLUDED
#define LZDEC_IO_STATS_HPP_INCLUDED

#include <cstdint>
#include <map>
#include <string>
#include <string_view>

namespace lzdec {

// Byte-accurate disk transfer counters, grouped by named stream.
// Counters only ever grow; totals are always the sum over streams.
class io_stats {
  public:
    struct stream_counters {
        std::uint64_t bytes_read = 0;
        std::uint64_t bytes_written = 0;
        std::uint64_t read_ops = 0;
        std::uint64_t write_ops = 0;
    };

    stream_counters &stream(std::string_view name) {
        auto it = m_streams.find(name);
        if (it == m_streams.end())
            it = m_streams.emplace(std::string(name), stream_counters{}).first;
        return it->second;
    }

    void note_read(std::string_view name, std::uint64_t bytes) {
        auto &s = stream(name);
        s.bytes_read += bytes;
        s.read_ops += 1;
    }

    void note_write(std::string_view name, std::uint64_t bytes) {
        auto &s = stream(name);
        s.bytes_written += bytes;
        s.write_ops += 1;
    }

    std::uint64_t total_bytes_read() const {
        std::uint64_t t = 0;
        for (const auto &kv : m_streams) t += kv.second.bytes_read;
        return t;
    }

    std::uint64_t total_bytes_written() const {
        std::uint64_t t = 0;
        for (const auto &kv : m_streams) t += kv.second.bytes_written;
        return t;
    }

    const std::map<std::string, stream_counters, std::less<>> &streams() const {
        return m_streams;
    }

  private:
    std::map<std::string, stream_counters, std::less<>> m_streams;
};

}  // namespace lzdec

#endif  // LZDEC_IO_STATS_HPP_INCLUDED
