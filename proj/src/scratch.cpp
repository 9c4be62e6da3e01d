#include "lzdec/scratch.hpp"

#include <system_error>

namespace lzdec {

namespace fs = std::filesystem;

scratch_file &scratch_file::operator=(scratch_file &&other) noexcept {
    if (this != &other) {
        remove();
        m_mgr = other.m_mgr;
        m_id = other.m_id;
        m_path = std::move(other.m_path);
        other.m_mgr = nullptr;
    }
    return *this;
}

std::uint64_t scratch_file::size() const {
    if (!m_mgr) return 0;
    auto it = m_mgr->m_sizes.find(m_id);
    return it == m_mgr->m_sizes.end() ? 0 : it->second.size;
}

std::function<void(std::uint64_t)> scratch_file::grow_hook() {
    scratch_manager *mgr = m_mgr;
    std::uint64_t id = m_id;
    return [mgr, id](std::uint64_t delta) { mgr->grow(id, delta); };
}

void scratch_file::charge(std::uint64_t bytes) {
    if (m_mgr) m_mgr->grow(m_id, bytes);
}

void scratch_file::remove() {
    if (m_mgr) {
        m_mgr->drop(m_id);
        m_mgr = nullptr;
    }
}

scratch_manager::scratch_manager(const fs::path &root) : m_root(root) {
    std::error_code ec;
    m_owns_root = fs::create_directories(m_root, ec);
    if (ec)
        throw io_error("scratch", "cannot create scratch directory '" + m_root.string() + "'");
}

scratch_manager::~scratch_manager() {
    std::error_code ec;
    for (const auto &kv : m_sizes) fs::remove(kv.second.path, ec);
    if (m_owns_root) fs::remove(m_root, ec);  // succeeds only if empty
}

scratch_file scratch_manager::create(const std::string &hint) {
    std::uint64_t id = m_next_id++;
    fs::path p = m_root / ("s" + std::to_string(id) + "_" + hint);
    m_sizes.emplace(id, entry{0, p});
    return scratch_file(this, id, std::move(p));
}

void scratch_manager::grow(std::uint64_t id, std::uint64_t delta) {
    auto it = m_sizes.find(id);
    if (it == m_sizes.end()) throw contract_error("grow on removed scratch file");
    it->second.size += delta;
    m_live += delta;
    if (m_live > m_peak) m_peak = m_live;
    if (m_hook) m_hook();
}

void scratch_manager::drop(std::uint64_t id) {
    auto it = m_sizes.find(id);
    if (it == m_sizes.end()) return;
    m_live -= it->second.size;
    std::error_code ec;
    fs::remove(it->second.path, ec);
    m_sizes.erase(it);
    if (m_hook) m_hook();
}

}  // namespace lzdec
