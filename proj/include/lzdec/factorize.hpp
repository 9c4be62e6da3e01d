#ifndef LZDEC_FACTORIZE_HPP_INCLUDED
#define LZDEC_FACTORIZE_HPP_INCLUDED

#include <cstdint>
#include <functional>
#include <span>
#include <utility>
#include <vector>

#include "lzdec/types.hpp"

namespace lzdec {

// Suffix array over bytes (SA-IS, linear time). Requires n < 2^31 - 1.
std::vector<std::int32_t> suffix_array(std::span<const std::uint8_t> text);

// Longest previous factor at position i with the smallest source among all
// maximizers. Returns (p, len); len == 0 means X[i] has no earlier
// occurrence (p is meaningless then). Intended for testing and desk-scale
// use: each call builds index structures over the whole string.
std::pair<std::uint64_t, std::uint64_t> lpf(std::span<const std::uint8_t> text, std::uint64_t i);

// Greedy left-to-right parsing into longest previous factors. Every repeat
// phrase equals lpf() at its start (same smallest-p tie-break); literals are
// emitted where no earlier occurrence exists. The callback form streams
// phrases without materializing the parsing.
void factorize_greedy(std::span<const std::uint8_t> text,
                      const std::function<void(const phrase &)> &emit);
std::vector<phrase> factorize_greedy(std::span<const std::uint8_t> text);

// Rough peak RAM estimate of factorize_greedy (13 bytes per input byte plus
// slack); cmd_encode checks it against --max-ram before starting.
inline std::uint64_t factorize_ram_bytes(std::uint64_t n) { return 13 * n + (32ull << 20); }

// Instance of the permuting problem: k items of h bytes each (every byte
// < sigma) and a permutation pi of [0, k).
struct permute_instance {
    std::uint64_t h = 8;
    std::uint32_t sigma = 256;
    std::vector<std::uint8_t> items;  // k * h bytes, concatenated
    std::vector<std::uint64_t> pi;

    std::uint64_t k() const { return pi.size(); }
    void validate() const;

    static permute_instance random(std::uint64_t k, std::uint64_t h, std::uint32_t sigma,
                                   std::uint64_t seed);

    // Direct in-RAM answer: X concatenated with the permuted sequence Y.
    std::vector<std::uint8_t> oracle_text() const;
};

// LZ77-type parsing that decodes to oracle_text(): h*k literal phrases
// spelling X, then one repeat phrase (h*pi[i], h) per item of Y.
void gen_permute_parsing(const permute_instance &inst,
                         const std::function<void(const phrase &)> &emit);
std::vector<phrase> gen_permute_parsing(const permute_instance &inst);

// Synthetic corpora.
enum class corpus_kind { random255, dna_like, repetitive };

const char *corpus_kind_name(corpus_kind kind);
corpus_kind corpus_kind_from_name(const std::string &name);

// Deterministic for fixed (kind, n, seed); emits the text in chunks.
void gen_corpus(corpus_kind kind, std::uint64_t n, std::uint64_t seed,
                const std::function<void(std::span<const std::uint8_t>)> &sink);
std::vector<std::uint8_t> gen_corpus_bytes(corpus_kind kind, std::uint64_t n, std::uint64_t seed);

}  // namespace lzdec

#endif  // LZDEC_FACTORIZE_HPP_INCLUDED
