#include <random>

#include "lzdec/errors.hpp"
#include "lzdec/factorize.hpp"

namespace lzdec {

const char *corpus_kind_name(corpus_kind kind) {
    switch (kind) {
        case corpus_kind::random255: return "random255";
        case corpus_kind::dna_like: return "dna_like";
        case corpus_kind::repetitive: return "repetitive";
    }
    return "?";
}

corpus_kind corpus_kind_from_name(const std::string &name) {
    if (name == "random255") return corpus_kind::random255;
    if (name == "dna_like") return corpus_kind::dna_like;
    if (name == "repetitive") return corpus_kind::repetitive;
    throw contract_error("unknown corpus kind '" + name + "'");
}

namespace {

constexpr std::size_t k_chunk = 1 << 20;

// Seeds are mixed with a per-kind tag so different kinds with the same seed
// do not share byte streams.
std::uint64_t mix_seed(corpus_kind kind, std::uint64_t seed) {
    return seed * 0x9e3779b97f4a7c15ull + static_cast<std::uint64_t>(kind) + 1;
}

void gen_random255(std::uint64_t n, std::mt19937_64 &rng,
                   const std::function<void(std::span<const std::uint8_t>)> &sink) {
    std::vector<std::uint8_t> chunk(std::min<std::uint64_t>(n, k_chunk));
    std::uint64_t left = n;
    while (left > 0) {
        std::size_t take = static_cast<std::size_t>(std::min<std::uint64_t>(left, chunk.size()));
        for (std::size_t i = 0; i < take; ++i)
            chunk[i] = static_cast<std::uint8_t>(rng() % 255);  // 255 distinct values
        sink({chunk.data(), take});
        left -= take;
    }
}

void gen_dna(std::uint64_t n, std::mt19937_64 &rng,
             const std::function<void(std::span<const std::uint8_t>)> &sink) {
    // Skewed distribution over A, C, G, T plus rare N and newline,
    // resembling read collections.
    struct bin {
        std::uint32_t upto;
        char ch;
    };
    static constexpr bin bins[] = {{2950, 'A'}, {4950, 'C'}, {6950, 'G'},
                                   {9380, 'T'}, {9500, 'N'}, {10000, '\n'}};
    std::vector<std::uint8_t> chunk(std::min<std::uint64_t>(n, k_chunk));
    std::uint64_t left = n;
    while (left > 0) {
        std::size_t take = static_cast<std::size_t>(std::min<std::uint64_t>(left, chunk.size()));
        for (std::size_t i = 0; i < take; ++i) {
            std::uint32_t roll = static_cast<std::uint32_t>(rng() % 10000);
            for (const bin &b : bins) {
                if (roll < b.upto) {
                    chunk[i] = static_cast<std::uint8_t>(b.ch);
                    break;
                }
            }
        }
        sink({chunk.data(), take});
        left -= take;
    }
}

void gen_repetitive(std::uint64_t n, std::mt19937_64 &rng,
                    const std::function<void(std::span<const std::uint8_t>)> &sink) {
    // A random kernel of ~1% of n replicated end to end, with one point
    // mutation per ~1000 output bytes. Gives a large n/z like source-code
    // tarball corpora.
    std::uint64_t kernel_len = std::max<std::uint64_t>(1, n / 100);
    std::vector<std::uint8_t> kernel(kernel_len);
    for (auto &b : kernel) b = static_cast<std::uint8_t>(rng());

    std::vector<std::uint8_t> chunk(std::min<std::uint64_t>(n, k_chunk));
    std::uint64_t left = n;
    std::uint64_t pos = 0;
    while (left > 0) {
        std::size_t take = static_cast<std::size_t>(std::min<std::uint64_t>(left, chunk.size()));
        for (std::size_t i = 0; i < take; ++i, ++pos) {
            std::uint8_t b = kernel[pos % kernel_len];
            if (rng() % 1000 == 0) b = static_cast<std::uint8_t>(rng());
            chunk[i] = b;
        }
        sink({chunk.data(), take});
        left -= take;
    }
}

}  // namespace

void gen_corpus(corpus_kind kind, std::uint64_t n, std::uint64_t seed,
                const std::function<void(std::span<const std::uint8_t>)> &sink) {
    if (n < 1) throw contract_error("corpus length must be at least 1");
    std::mt19937_64 rng(mix_seed(kind, seed));
    switch (kind) {
        case corpus_kind::random255: gen_random255(n, rng, sink); break;
        case corpus_kind::dna_like: gen_dna(n, rng, sink); break;
        case corpus_kind::repetitive: gen_repetitive(n, rng, sink); break;
    }
}

std::vector<std::uint8_t> gen_corpus_bytes(corpus_kind kind, std::uint64_t n, std::uint64_t seed) {
    std::vector<std::uint8_t> out;
    out.reserve(n);
    gen_corpus(kind, n, seed, [&](std::span<const std::uint8_t> chunk) {
        out.insert(out.end(), chunk.begin(), chunk.end());
    });
    return out;
}

}  // namespace lzdec
