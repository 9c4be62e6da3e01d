#ifndef LZDEC_SHA256_HPP_INCLUDED
#define LZDEC_SHA256_HPP_INCLUDED

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <string>

namespace lzdec {

// Incremental SHA-256 (FIPS 180-4). Used to fingerprint decoder outputs in
// run reports.
class sha256 {
  public:
    sha256();
    void update(const void *data, std::size_t len);
    std::string hex_digest();  // finalizes; further updates are invalid

    static std::string of_file(const std::filesystem::path &path);
    static std::string of_bytes(const void *data, std::size_t len);

  private:
    void process_block(const std::uint8_t *block);

    std::uint32_t m_state[8];
    std::uint8_t m_buf[64];
    std::size_t m_fill = 0;
    std::uint64_t m_total = 0;
    bool m_done = false;
};

}  // namespace lzdec

#endif  // LZDEC_SHA256_HPP_INCLUDED
