#ifndef LZDEC_SCRATCH_HPP_INCLUDED
#define LZDEC_SCRATCH_HPP_INCLUDED

#include <cstdint>
#include <filesystem>
#include <functional>
#include <string>
#include <unordered_map>

#include "lzdec/errors.hpp"

namespace lzdec {

class scratch_manager;

// Move-only handle to one scratch file. Removing the handle (or letting it
// go out of scope) unlinks the file and credits its bytes back to the
// manager's live count.
class scratch_file {
  public:
    scratch_file() = default;
    scratch_file(scratch_manager *mgr, std::uint64_t id, std::filesystem::path path)
        : m_mgr(mgr), m_id(id), m_path(std::move(path)) {}
    scratch_file(scratch_file &&other) noexcept { *this = std::move(other); }
    scratch_file &operator=(scratch_file &&other) noexcept;
    scratch_file(const scratch_file &) = delete;
    scratch_file &operator=(const scratch_file &) = delete;
    ~scratch_file() { remove(); }

    bool valid() const { return m_mgr != nullptr; }
    const std::filesystem::path &path() const { return m_path; }
    std::uint64_t id() const { return m_id; }
    std::uint64_t size() const;

    // Growth hook for buffered_writer: charges flushed bytes to the manager.
    std::function<void(std::uint64_t)> grow_hook();

    // Manual accounting for files written without the hook.
    void charge(std::uint64_t bytes);

    void remove();

  private:
    scratch_manager *m_mgr = nullptr;
    std::uint64_t m_id = 0;
    std::filesystem::path m_path;
};

// Owns a directory of temporary files and tracks their total size. `peak()`
// never falls below any instantaneous `live()` value; after a run completes
// (successfully or by unwind) every registered file has been deleted and
// live() is 0 again.
class scratch_manager {
  public:
    explicit scratch_manager(const std::filesystem::path &root);
    ~scratch_manager();
    scratch_manager(const scratch_manager &) = delete;
    scratch_manager &operator=(const scratch_manager &) = delete;

    scratch_file create(const std::string &hint);

    std::uint64_t live_bytes() const { return m_live; }
    std::uint64_t peak_bytes() const { return m_peak; }
    std::uint64_t file_count() const { return m_sizes.size(); }
    const std::filesystem::path &root() const { return m_root; }

    // Invoked after every change to live_bytes (partwise decoding samples
    // total disk usage through it).
    void set_change_hook(std::function<void()> hook) { m_hook = std::move(hook); }

  private:
    friend class scratch_file;
    void grow(std::uint64_t id, std::uint64_t delta);
    void drop(std::uint64_t id);

    struct entry {
        std::uint64_t size = 0;
        std::filesystem::path path;
    };

    std::filesystem::path m_root;
    bool m_owns_root = false;
    std::uint64_t m_next_id = 0;
    std::uint64_t m_live = 0;
    std::uint64_t m_peak = 0;
    std::unordered_map<std::uint64_t, entry> m_sizes;
    std::function<void()> m_hook;
};

}  // namespace lzdec

#endif  // LZDEC_SCRATCH_HPP_INCLUDED
