#include "lzdec/factorize.hpp"

#include <algorithm>
#include <cstring>
#include <limits>
#include <random>

#include "lzdec/errors.hpp"

namespace lzdec {

namespace {

using std::int32_t;

inline bool sais_is_lms(const std::vector<bool> &is_s, int32_t i) {
    return i > 0 && is_s[i] && !is_s[i - 1];
}

template <class Sym>
void sais_buckets(const Sym *s, int32_t n, int32_t K, std::vector<int32_t> &bkt, bool tails) {
    std::fill(bkt.begin(), bkt.end(), 0);
    for (int32_t i = 0; i < n; ++i) ++bkt[s[i]];
    int32_t sum = 0;
    for (int32_t c = 0; c < K; ++c) {
        sum += bkt[c];
        bkt[c] = tails ? sum : sum - bkt[c];
    }
}

template <class Sym>
void sais_induce(const Sym *s, int32_t *SA, int32_t n, int32_t K, const std::vector<bool> &is_s,
                 std::vector<int32_t> &bkt) {
    // L-type suffixes left to right from bucket heads.
    sais_buckets(s, n, K, bkt, false);
    for (int32_t i = 0; i < n; ++i) {
        int32_t j = SA[i] - 1;
        if (SA[i] > 0 && !is_s[j]) SA[bkt[s[j]]++] = j;
    }
    // S-type suffixes right to left from bucket tails.
    sais_buckets(s, n, K, bkt, true);
    for (int32_t i = n - 1; i >= 0; --i) {
        int32_t j = SA[i] - 1;
        if (SA[i] > 0 && is_s[j]) SA[--bkt[s[j]]] = j;
    }
}

// SA-IS on s[0..n) whose last symbol is a unique smallest sentinel.
// The reduced problem is solved inside the SA array itself.
template <class Sym>
void sais_core(const Sym *s, int32_t *SA, int32_t n, int32_t K) {
    if (n == 1) {
        SA[0] = 0;
        return;
    }

    std::vector<bool> is_s(n);
    is_s[n - 1] = true;
    for (int32_t i = n - 2; i >= 0; --i)
        is_s[i] = (s[i] < s[i + 1]) || (s[i] == s[i + 1] && is_s[i + 1]);

    std::vector<int32_t> bkt(K);

    // Sort LMS substrings by one round of induction from an unordered
    // placement of LMS positions at their bucket tails.
    std::fill(SA, SA + n, -1);
    sais_buckets(s, n, K, bkt, true);
    for (int32_t i = 1; i < n; ++i)
        if (sais_is_lms(is_s, i)) SA[--bkt[s[i]]] = i;
    sais_induce(s, SA, n, K, is_s, bkt);

    int32_t n1 = 0;
    for (int32_t i = 0; i < n; ++i)
        if (sais_is_lms(is_s, SA[i])) SA[n1++] = SA[i];

    // Name the sorted LMS substrings; names live sparsely in SA[n1..n).
    std::fill(SA + n1, SA + n, -1);
    int32_t names = 0;
    int32_t prev = -1;
    for (int32_t i = 0; i < n1; ++i) {
        int32_t pos = SA[i];
        bool differ = false;
        if (prev < 0) {
            differ = true;
        } else {
            for (int32_t d = 0;; ++d) {
                if (pos + d == n - 1 || prev + d == n - 1 || s[pos + d] != s[prev + d] ||
                    is_s[pos + d] != is_s[prev + d]) {
                    differ = true;
                    break;
                }
                if (d > 0 && (sais_is_lms(is_s, pos + d) || sais_is_lms(is_s, prev + d)))
                    break;  // both LMS: substrings equal
            }
        }
        if (differ) {
            ++names;
            prev = pos;
        }
        SA[n1 + pos / 2] = names - 1;
    }
    for (int32_t i = n - 1, j = n - 1; i >= n1; --i)
        if (SA[i] >= 0) SA[j--] = SA[i];

    // Reduced string in the tail of SA; its SA in the head.
    int32_t *s1 = SA + n - n1;
    if (names < n1) {
        sais_core(s1, SA, n1, names);
    } else {
        for (int32_t i = 0; i < n1; ++i) SA[s1[i]] = i;
    }

    // Map reduced ranks back to text positions.
    for (int32_t i = 1, j = 0; i < n; ++i)
        if (sais_is_lms(is_s, i)) s1[j++] = i;
    for (int32_t i = 0; i < n1; ++i) SA[i] = s1[SA[i]];

    // Final induction from the now fully sorted LMS suffixes.
    std::fill(SA + n1, SA + n, -1);
    sais_buckets(s, n, K, bkt, true);
    for (int32_t i = n1 - 1; i >= 0; --i) {
        int32_t j = SA[i];
        SA[i] = -1;
        SA[--bkt[s[j]]] = j;
    }
    sais_induce(s, SA, n, K, is_s, bkt);
}

constexpr std::uint64_t k_max_factorize_n = (1ull << 31) - 2;

// PSV/NSV in text-position terms: for each position j, the nearest suffix in
// SA order on either side that starts before j. -1 where absent.
void compute_psv_nsv(const std::vector<int32_t> &sa, std::vector<int32_t> &psv,
                     std::vector<int32_t> &nsv) {
    const std::size_t n = sa.size();
    psv.assign(n, -1);
    nsv.assign(n, -1);
    std::vector<int32_t> stack;
    stack.reserve(64);
    for (std::size_t x = 0; x < n; ++x) {
        int32_t pos = sa[x];
        while (!stack.empty() && stack.back() > pos) {
            nsv[stack.back()] = pos;
            stack.pop_back();
        }
        psv[pos] = stack.empty() ? -1 : stack.back();
        stack.push_back(pos);
    }
}

inline std::uint64_t extend_match(std::span<const std::uint8_t> text, int32_t p, std::uint64_t i) {
    if (p < 0) return 0;
    const std::uint64_t n = text.size();
    std::uint64_t len = 0;
    std::uint64_t pp = static_cast<std::uint64_t>(p);
    while (i + len < n && text[pp + len] == text[i + len]) ++len;
    return len;
}

std::vector<int32_t> compute_isa(const std::vector<int32_t> &sa) {
    std::vector<int32_t> isa(sa.size());
    for (std::size_t r = 0; r < sa.size(); ++r) isa[sa[r]] = static_cast<int32_t>(r);
    return isa;
}

// Kasai's algorithm; lcp[r] = lcp(SA[r-1], SA[r]), lcp[0] = 0.
std::vector<int32_t> compute_lcp(std::span<const std::uint8_t> text,
                                 const std::vector<int32_t> &sa,
                                 const std::vector<int32_t> &isa) {
    const std::size_t n = sa.size();
    std::vector<int32_t> lcp(n, 0);
    std::uint64_t h = 0;
    for (std::size_t i = 0; i < n; ++i) {
        int32_t r = isa[i];
        if (r > 0) {
            std::uint64_t j = static_cast<std::uint64_t>(sa[r - 1]);
            while (i + h < n && j + h < n && text[i + h] == text[j + h]) ++h;
            lcp[r] = static_cast<int32_t>(h);
            if (h > 0) --h;
        } else {
            h = 0;
        }
    }
    return lcp;
}

// Smallest text position whose suffix shares a prefix of length `len` with
// the suffix at position i (the leftmost occurrence of that factor).
std::uint64_t leftmost_occurrence(const std::vector<int32_t> &sa, const std::vector<int32_t> &isa,
                                  const std::vector<int32_t> &lcp, std::uint64_t i,
                                  std::uint64_t len) {
    const std::size_t n = sa.size();
    std::size_t r = static_cast<std::size_t>(isa[i]);
    int32_t best = sa[r];
    for (std::size_t x = r; x > 0 && lcp[x] >= static_cast<int32_t>(len); --x)
        best = std::min(best, sa[x - 1]);
    for (std::size_t x = r + 1; x < n && lcp[x] >= static_cast<int32_t>(len); ++x)
        best = std::min(best, sa[x]);
    return static_cast<std::uint64_t>(best);
}

}  // namespace

std::vector<int32_t> suffix_array(std::span<const std::uint8_t> text) {
    const std::uint64_t n = text.size();
    if (n > k_max_factorize_n)
        throw budget_error("input of " + std::to_string(n) +
                           " bytes exceeds the in-RAM factorizer limit");
    if (n == 0) return {};

    std::vector<int32_t> sa(n + 1);
    {
        // Shift symbols by one and append an explicit smallest sentinel.
        std::vector<int32_t> s(n + 1);
        for (std::uint64_t i = 0; i < n; ++i) s[i] = static_cast<int32_t>(text[i]) + 1;
        s[n] = 0;
        sais_core<int32_t>(s.data(), sa.data(), static_cast<int32_t>(n + 1), 257);
    }
    // sa[0] is the sentinel position n; drop it.
    sa.erase(sa.begin());
    return sa;
}

std::pair<std::uint64_t, std::uint64_t> lpf(std::span<const std::uint8_t> text, std::uint64_t i) {
    if (i >= text.size()) throw contract_error("lpf position out of range");
    std::vector<int32_t> sa = suffix_array(text);
    std::uint64_t len;
    {
        std::vector<int32_t> psv, nsv;
        compute_psv_nsv(sa, psv, nsv);
        len = std::max(extend_match(text, psv[i], i), extend_match(text, nsv[i], i));
    }
    if (len == 0) return {0, 0};
    std::vector<int32_t> isa = compute_isa(sa);
    std::vector<int32_t> lcp = compute_lcp(text, sa, isa);
    return {leftmost_occurrence(sa, isa, lcp, i, len), len};
}

void factorize_greedy(std::span<const std::uint8_t> text,
                      const std::function<void(const phrase &)> &emit) {
    const std::uint64_t n = text.size();
    if (n == 0) return;

    std::vector<int32_t> sa = suffix_array(text);

    // Pass 1: phrase boundaries and lengths from PSV/NSV candidates.
    // Each candidate comparison is bounded by the phrase length, so the
    // total work stays linear.
    std::vector<std::pair<std::uint64_t, std::uint64_t>> raw;  // (start, len); len 0 = literal
    {
        std::vector<int32_t> psv, nsv;
        compute_psv_nsv(sa, psv, nsv);
        std::uint64_t i = 0;
        while (i < n) {
            std::uint64_t len =
                std::max(extend_match(text, psv[i], i), extend_match(text, nsv[i], i));
            raw.emplace_back(i, len);
            i += len == 0 ? 1 : len;
        }
    }

    // Pass 2: smallest source among the maximizers, via the lcp interval
    // around each phrase start.
    std::vector<int32_t> isa = compute_isa(sa);
    std::vector<int32_t> lcp = compute_lcp(text, sa, isa);
    for (const auto &[start, len] : raw) {
        if (len == 0) {
            emit(phrase::literal(text[start]));
        } else {
            std::uint64_t p = leftmost_occurrence(sa, isa, lcp, start, len);
            emit(phrase::repeat(p, len));
        }
    }
}

std::vector<phrase> factorize_greedy(std::span<const std::uint8_t> text) {
    std::vector<phrase> out;
    factorize_greedy(text, [&](const phrase &ph) { out.push_back(ph); });
    return out;
}

void permute_instance::validate() const {
    if (h < 1) throw contract_error("permute instance needs item width h >= 1");
    if (items.size() != h * k())
        throw contract_error("permute instance item bytes do not match k * h");
    std::vector<bool> seen(k(), false);
    for (std::uint64_t v : pi) {
        if (v >= k() || seen[v]) throw contract_error("pi is not a permutation of [0, k)");
        seen[v] = true;
    }
    for (std::uint8_t b : items)
        if (sigma < 256 && b >= sigma)
            throw contract_error("item byte exceeds the alphabet bound");
}

permute_instance permute_instance::random(std::uint64_t k, std::uint64_t h, std::uint32_t sigma,
                                          std::uint64_t seed) {
    permute_instance inst;
    inst.h = h;
    inst.sigma = sigma;
    std::mt19937_64 rng(seed);
    inst.items.resize(k * h);
    for (auto &b : inst.items) b = static_cast<std::uint8_t>(rng() % sigma);
    inst.pi.resize(k);
    for (std::uint64_t i = 0; i < k; ++i) inst.pi[i] = i;
    for (std::uint64_t i = k; i > 1; --i) std::swap(inst.pi[i - 1], inst.pi[rng() % i]);
    return inst;
}

std::vector<std::uint8_t> permute_instance::oracle_text() const {
    std::vector<std::uint8_t> out;
    out.reserve(2 * items.size());
    out.insert(out.end(), items.begin(), items.end());
    for (std::uint64_t i = 0; i < k(); ++i) {
        const std::uint8_t *item = items.data() + pi[i] * h;
        out.insert(out.end(), item, item + h);
    }
    return out;
}

void gen_permute_parsing(const permute_instance &inst,
                         const std::function<void(const phrase &)> &emit) {
    inst.validate();
    for (std::uint8_t b : inst.items) emit(phrase::literal(b));
    for (std::uint64_t i = 0; i < inst.k(); ++i)
        emit(phrase::repeat(inst.h * inst.pi[i], inst.h));
}

std::vector<phrase> gen_permute_parsing(const permute_instance &inst) {
    std::vector<phrase> out;
    out.reserve(inst.items.size() + inst.k());
    gen_permute_parsing(inst, [&](const phrase &ph) { out.push_back(ph); });
    return out;
}

}  // namespace lzdec
