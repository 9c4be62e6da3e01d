#ifndef LZDEC_TYPES_HPP_INCLUDED
#define LZDEC_TYPES_HPP_INCLUDED

#include <cstdint>
#include <string>

#include "lzdec/errors.hpp"

namespace lzdec {

// One parsing element as stored on disk: a pair (a, b) of unsigned integers.
// b == 0 encodes a literal phrase whose single byte is a (a < 256);
// b >= 1 encodes a repeat phrase with source position a and length b.
// All positions are 0-based.
struct phrase {
    std::uint64_t a = 0;
    std::uint64_t b = 0;

    static phrase literal(std::uint8_t c) { return {c, 0}; }
    static phrase repeat(std::uint64_t p, std::uint64_t len) { return {p, len}; }

    bool is_literal() const { return b == 0; }
    std::uint8_t literal_byte() const { return static_cast<std::uint8_t>(a); }
    std::uint64_t source() const { return a; }
    std::uint64_t length() const { return is_literal() ? 1 : b; }

    bool operator==(const phrase &) const = default;
};

// A phrase annotated with its absolute text position q. For repeats the
// source starts strictly before the phrase (p < q); self-overlap p + len > q
// is allowed and resolved by strict left-to-right byte copying.
struct located_phrase {
    std::uint64_t source = 0;  // p, repeats only
    std::uint64_t pos = 0;     // q
    std::uint64_t length = 0;  // 1 for literals
    std::uint8_t ch = 0;       // literals only
    bool literal = false;

    static located_phrase make_literal(std::uint64_t q, std::uint8_t c) {
        return {0, q, 1, c, true};
    }
    static located_phrase make_repeat(std::uint64_t p, std::uint64_t q, std::uint64_t len) {
        return {p, q, len, 0, false};
    }

    bool operator==(const located_phrase &) const = default;
};

// Division of the text [0, n) into ceil(n/b) segments of size b
// (the last segment may be shorter).
struct segment_geometry {
    std::uint64_t n = 0;
    std::uint64_t b = 1;

    segment_geometry() = default;
    segment_geometry(std::uint64_t text_len, std::uint64_t seg_size) : n(text_len), b(seg_size) {
        if (b == 0) throw contract_error("segment size must be positive");
    }

    std::uint64_t segment_count() const { return n == 0 ? 0 : (n + b - 1) / b; }
    std::uint64_t segment_of(std::uint64_t pos) const { return pos / b; }
    std::uint64_t segment_start(std::uint64_t seg) const { return seg * b; }
    std::uint64_t segment_end(std::uint64_t seg) const {
        std::uint64_t e = (seg + 1) * b;
        return e < n ? e : n;
    }
    std::uint64_t segment_len(std::uint64_t seg) const {
        return segment_end(seg) - segment_start(seg);
    }
    // First segment boundary strictly after pos (not clamped to n).
    std::uint64_t boundary_after(std::uint64_t pos) const { return (pos / b + 1) * b; }
};

// Aggregate counts of one parsing.
struct parsing_stats {
    std::uint64_t n = 0;               // decoded text length
    std::uint64_t z = 0;               // total phrase count
    std::uint64_t z_rep = 0;           // repeat phrases
    std::uint64_t z_lit = 0;           // literal phrases
    std::uint64_t repeat_len_sum = 0;  // sum of repeat lengths

    void account(const located_phrase &ph) {
        z += 1;
        if (ph.literal) {
            z_lit += 1;
            n += 1;
        } else {
            z_rep += 1;
            repeat_len_sum += ph.length;
            n += ph.length;
        }
    }
};

// RAM and block-size budget in the external-memory cost model.
struct memory_budget {
    std::uint64_t ram_bytes = 64ull << 20;
    std::uint64_t block_bytes = 1ull << 20;

    void validate() const {
        if (block_bytes < 4096)
            throw budget_error("block size must be at least 4096 bytes, got " +
                               std::to_string(block_bytes));
        if (ram_bytes < 4 * block_bytes)
            throw budget_error("RAM budget must be at least 4 blocks (" +
                               std::to_string(4 * block_bytes) + " bytes), got " +
                               std::to_string(ram_bytes));
    }
};

}  // namespace lzdec

#endif  // LZDEC_TYPES_HPP_INCLUDED
