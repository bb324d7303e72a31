#include "dsi/exactlin.hpp"

#include <algorithm>

#if defined(__x86_64__) || defined(__i386__)
#include <immintrin.h>
#define DSI_HAVE_X86 1
#endif

namespace dsi::modp {

namespace {

std::uint32_t mersenne_reduce(std::uint64_t t) {
    t = (t & kPrime) + (t >> 31);
    t = (t & kPrime) + (t >> 31);
    return static_cast<std::uint32_t>(t >= kPrime ? t - kPrime : t);
}

std::uint32_t mul(std::uint32_t a, std::uint32_t b) {
    return mersenne_reduce(static_cast<std::uint64_t>(a) * b);
}

std::uint32_t power(std::uint32_t a, std::uint64_t e) {
    std::uint32_t r = 1;
    while (e) {
        if (e & 1) r = mul(r, a);
        a = mul(a, a);
        e >>= 1;
    }
    return r;
}

std::uint32_t inverse(std::uint32_t a) { return power(a, kPrime - 2); }

}  // namespace

void axpy_scalar(std::span<std::uint32_t> dst, std::span<const std::uint32_t> src, std::uint32_t f) {
    const std::size_t n = std::min(dst.size(), src.size());
    for (std::size_t i = 0; i < n; ++i) {
        std::uint32_t s = dst[i] + mul(f, src[i]);
        dst[i] = s >= kPrime ? s - kPrime : s;
    }
}

#ifdef DSI_HAVE_X86

__attribute__((target("avx2"))) void axpy_avx2(std::span<std::uint32_t> dst, std::span<const std::uint32_t> src,
                                               std::uint32_t f) {
    const std::size_t n = std::min(dst.size(), src.size());
    const __m256i p64 = _mm256_set1_epi64x(kPrime);
    const __m256i p32 = _mm256_set1_epi32(static_cast<int>(kPrime));
    const __m256i fv = _mm256_set1_epi64x(f);
    std::size_t i = 0;
    for (; i + 8 <= n; i += 8) {
        const __m256i x = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(src.data() + i));
        const __m256i d = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(dst.data() + i));
        __m256i even = _mm256_mul_epu32(x, fv);
        __m256i odd = _mm256_mul_epu32(_mm256_srli_epi64(x, 32), fv);
        even = _mm256_add_epi64(_mm256_and_si256(even, p64), _mm256_srli_epi64(even, 31));
        odd = _mm256_add_epi64(_mm256_and_si256(odd, p64), _mm256_srli_epi64(odd, 31));
        even = _mm256_add_epi64(_mm256_and_si256(even, p64), _mm256_srli_epi64(even, 31));
        odd = _mm256_add_epi64(_mm256_and_si256(odd, p64), _mm256_srli_epi64(odd, 31));
        __m256i prod = _mm256_blend_epi32(even, _mm256_slli_epi64(odd, 32), 0b10101010);
        prod = _mm256_min_epu32(prod, _mm256_sub_epi32(prod, p32));
        __m256i s = _mm256_add_epi32(d, prod);
        s = _mm256_min_epu32(s, _mm256_sub_epi32(s, p32));
        _mm256_storeu_si256(reinterpret_cast<__m256i*>(dst.data() + i), s);
    }
    axpy_scalar(dst.subspan(i), src.subspan(i), f);
}

bool avx2_available() { return __builtin_cpu_supports("avx2"); }

#else

void axpy_avx2(std::span<std::uint32_t> dst, std::span<const std::uint32_t> src, std::uint32_t f) {
    axpy_scalar(dst, src, f);
}

bool avx2_available() { return false; }

#endif

AxpyKernel active_kernel() {
    static const AxpyKernel k = avx2_available() ? &axpy_avx2 : &axpy_scalar;
    return k;
}

const char* active_kernel_name() { return avx2_available() ? "avx2" : "scalar"; }

std::uint32_t reduce_rational(const Rational& q, bool& ok) {
    const mpz_class p(kPrime);
    mpz_class num = q.get_num() % p;
    if (num < 0) num += p;
    mpz_class den = q.get_den() % p;
    if (den == 0) {
        ok = false;
        return 0;
    }
    ok = true;
    const auto a = static_cast<std::uint32_t>(num.get_ui());
    const auto b = static_cast<std::uint32_t>(den.get_ui());
    return mul(a, inverse(b));
}

std::size_t dense_rank(std::vector<std::vector<std::uint32_t>> rows, AxpyKernel kernel) {
    if (rows.empty()) return 0;
    const std::size_t cols = rows.front().size();
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows.size(); ++c) {
        std::size_t piv = r;
        while (piv < rows.size() && rows[piv][c] == 0) ++piv;
        if (piv == rows.size()) continue;
        std::swap(rows[r], rows[piv]);
        const std::uint32_t inv = inverse(rows[r][c]);
        for (std::size_t i = r + 1; i < rows.size(); ++i) {
            if (rows[i][c] == 0) continue;
            const std::uint32_t f = kPrime - mul(rows[i][c], inv);
            kernel(std::span<std::uint32_t>(rows[i]).subspan(c), std::span<const std::uint32_t>(rows[r]).subspan(c), f);
        }
        ++r;
    }
    return r;
}

std::optional<std::size_t> rank_mod_p(const RatMatrix& m) {
    std::vector<std::vector<std::uint32_t>> rows(m.rows(), std::vector<std::uint32_t>(m.cols(), 0));
    for (std::size_t r = 0; r < m.rows(); ++r)
        for (const auto& [c, x] : m.row(r)) {
            bool ok = true;
            rows[r][c] = reduce_rational(x, ok);
            if (!ok) return std::nullopt;
        }
    return dense_rank(std::move(rows), active_kernel());
}

}  // namespace dsi::modp
