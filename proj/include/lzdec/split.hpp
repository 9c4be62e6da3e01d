#ifndef LZDEC_SPLIT_HPP_INCLUDED
#define LZDEC_SPLIT_HPP_INCLUDED

#include <algorithm>
#include <cstdint>

#include "lzdec/file_io.hpp"
#include "lzdec/types.hpp"

namespace lzdec {

// Scratch record formats shared by the external decoders. Positions use
// 5-byte little-endian integers (sufficient for n < 2^40, which also bounds
// every input the desk-scale factorizer can produce).
inline constexpr unsigned k_scratch_width = 5;
inline constexpr std::uint64_t k_scratch_pos_limit = 1ull << 40;

// One repeat piece after splitting: phrase and source each lie inside a
// single segment.
struct piece_record {
    std::uint64_t source = 0;
    std::uint64_t pos = 0;
    std::uint64_t length = 0;

    static constexpr std::size_t encoded_size = 3 * k_scratch_width;
    void encode(std::uint8_t *dst) const {
        store_uint(dst, source, k_scratch_width);
        store_uint(dst + k_scratch_width, pos, k_scratch_width);
        store_uint(dst + 2 * k_scratch_width, length, k_scratch_width);
    }
    static piece_record decode(const std::uint8_t *src) {
        piece_record r;
        r.source = load_uint(src, k_scratch_width);
        r.pos = load_uint(src + k_scratch_width, k_scratch_width);
        r.length = load_uint(src + 2 * k_scratch_width, k_scratch_width);
        return r;
    }
    bool operator==(const piece_record &) const = default;
};

struct literal_record {
    std::uint64_t pos = 0;
    std::uint8_t ch = 0;

    static constexpr std::size_t encoded_size = k_scratch_width + 1;
    void encode(std::uint8_t *dst) const {
        store_uint(dst, pos, k_scratch_width);
        dst[k_scratch_width] = ch;
    }
    static literal_record decode(const std::uint8_t *src) {
        return {load_uint(src, k_scratch_width), src[k_scratch_width]};
    }
    bool operator==(const literal_record &) const = default;
};

// Splits one repeat phrase so that every piece and its source each lie
// entirely inside one segment: the cut length is the minimum of the distance
// to the next segment boundary after q, after p, and the remaining length.
// Literals pass through unchanged. Yields at most 2*ceil(len/b) + 1 pieces.
template <class Sink>
void split_phrase(const located_phrase &ph, const segment_geometry &geom, Sink &&sink) {
    if (ph.literal) {
        sink(ph);
        return;
    }
    std::uint64_t p = ph.source;
    std::uint64_t q = ph.pos;
    std::uint64_t remaining = ph.length;
    while (remaining > 0) {
        std::uint64_t cut = std::min({geom.boundary_after(q) - q, geom.boundary_after(p) - p,
                                      remaining});
        sink(located_phrase::make_repeat(p, q, cut));
        p += cut;
        q += cut;
        remaining -= cut;
    }
}

// A piece is a far repeat iff its source starts more than b positions before
// the phrase.
inline bool is_far(const located_phrase &piece, std::uint64_t b) {
    return piece.pos - piece.source > b;
}

}  // namespace lzdec

#endif  // LZDEC_SPLIT_HPP_INCLUDED
