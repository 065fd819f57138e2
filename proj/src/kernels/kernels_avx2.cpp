// Compiled with -mavx2 only (no -mfma): products and sums stay separately rounded.
#include "ghostproj/kernels.hpp"

#include <immintrin.h>

#include <array>

namespace ghostproj::kernels::detail {

namespace {

// Lane masks for every 4-bit pattern; bit l of the index selects lane l.
struct LaneMasks {
    alignas(32) std::array<std::array<std::int64_t, 4>, 16> m{};
    constexpr LaneMasks() {
        for (int p = 0; p < 16; ++p)
            for (int l = 0; l < 4; ++l) m[p][l] = ((p >> l) & 1) ? -1 : 0;
    }
};

constexpr LaneMasks kLaneMasks{};

inline __m256d lane_mask(unsigned pattern) noexcept {
    return _mm256_castsi256_pd(
        _mm256_load_si256(reinterpret_cast<const __m256i*>(kLaneMasks.m[pattern].data())));
}

inline unsigned nibble(const std::uint64_t* bits, std::size_t k) noexcept {
    return static_cast<unsigned>((bits[k >> 6] >> (k & 63)) & 0xFU);
}

inline bool bit_at(const std::uint64_t* bits, std::size_t k) noexcept {
    return (bits[k >> 6] >> (k & 63)) & 1U;
}

}  // namespace

double masked_sum_avx2(const std::uint64_t* bits, const double* x, std::size_t n) {
    __m256d acc = _mm256_setzero_pd();
    const std::size_t n4 = n & ~std::size_t{3};
    for (std::size_t k = 0; k < n4; k += 4) {
        const __m256d v = _mm256_loadu_pd(x + k);
        acc = _mm256_add_pd(acc, _mm256_and_pd(v, lane_mask(nibble(bits, k))));
    }
    alignas(32) double p[4];
    _mm256_store_pd(p, acc);
    for (std::size_t k = n4; k < n; ++k) p[k & 3] += bit_at(bits, k) ? x[k] : 0.0;
    return (p[0] + p[1]) + (p[2] + p[3]);
}

void masked_add_avx2(const std::uint64_t* bits, double a, double* y, std::size_t n) {
    const __m256d va = _mm256_set1_pd(a);
    const std::size_t n4 = n & ~std::size_t{3};
    for (std::size_t k = 0; k < n4; k += 4) {
        const __m256d add = _mm256_and_pd(va, lane_mask(nibble(bits, k)));
        _mm256_storeu_pd(y + k, _mm256_add_pd(_mm256_loadu_pd(y + k), add));
    }
    for (std::size_t k = n4; k < n; ++k) y[k] += bit_at(bits, k) ? a : 0.0;
}

void axpy_avx2(double a, const double* x, double* y, std::size_t n) {
    const __m256d va = _mm256_set1_pd(a);
    const std::size_t n4 = n & ~std::size_t{3};
    for (std::size_t k = 0; k < n4; k += 4) {
        const __m256d prod = _mm256_mul_pd(va, _mm256_loadu_pd(x + k));
        _mm256_storeu_pd(y + k, _mm256_add_pd(_mm256_loadu_pd(y + k), prod));
    }
    for (std::size_t k = n4; k < n; ++k) {
        const double prod = a * x[k];
        y[k] += prod;
    }
}

double squared_distance_avx2(const double* a, const double* b, std::size_t n) {
    __m256d acc = _mm256_setzero_pd();
    const std::size_t n4 = n & ~std::size_t{3};
    for (std::size_t k = 0; k < n4; k += 4) {
        const __m256d d = _mm256_sub_pd(_mm256_loadu_pd(a + k), _mm256_loadu_pd(b + k));
        acc = _mm256_add_pd(acc, _mm256_mul_pd(d, d));
    }
    alignas(32) double p[4];
    _mm256_store_pd(p, acc);
    for (std::size_t k = n4; k < n; ++k) {
        const double d = a[k] - b[k];
        const double sq = d * d;
        p[k & 3] += sq;
    }
    return (p[0] + p[1]) + (p[2] + p[3]);
}

}  // namespace ghostproj::kernels::detail
