#pragma once

// Inner-loop arithmetic shared by feature extraction, reconstruction and the
// kernel experiments. Each kernel exists as a scalar reference and, on x86-64,
// an AVX2 variant; the variant is picked once at runtime.
//
// Reduction kernels accumulate into four interleaved partial sums (element k
// goes to partial k mod 4) and finish with (p0 + p1) + (p2 + p3). The scalar
// reference follows the same order, and no variant contracts multiply-add into
// FMA, so every variant returns bit-identical results.

#include <cstddef>
#include <cstdint>
#include <string_view>
#include <vector>

namespace ghostproj::kernels {

struct KernelTable {
    std::string_view name;

    /// Σ x[k] over the k < n whose bit is set in the packed little-endian word array.
    double (*masked_sum)(const std::uint64_t* bits, const double* x, std::size_t n);

    /// y[k] += a for every k < n whose bit is set.
    void (*masked_add)(const std::uint64_t* bits, double a, double* y, std::size_t n);

    /// y[k] += a * x[k].
    void (*axpy)(double a, const double* x, double* y, std::size_t n);

    /// Σ (a[k] − b[k])².
    double (*squared_distance)(const double* a, const double* b, std::size_t n);
};

const KernelTable& scalar_table() noexcept;

/// nullptr when the binary was built without AVX2 support or the CPU lacks it.
const KernelTable* avx2_table() noexcept;

/// Every table usable on this machine, scalar first.
std::vector<const KernelTable*> available_tables();

/// The table used by library code. Chosen on first use: GHOSTPROJ_SIMD=scalar
/// or GHOSTPROJ_SIMD=avx2 forces a variant; otherwise the widest supported one.
const KernelTable& active() noexcept;

/// Overrides the active table; returns false if the named variant is unavailable.
bool select(std::string_view name) noexcept;

namespace detail {
double masked_sum_scalar(const std::uint64_t* bits, const double* x, std::size_t n);
void masked_add_scalar(const std::uint64_t* bits, double a, double* y, std::size_t n);
void axpy_scalar(double a, const double* x, double* y, std::size_t n);
double squared_distance_scalar(const double* a, const double* b, std::size_t n);

#if defined(GHOSTPROJ_HAVE_AVX2)
double masked_sum_avx2(const std::uint64_t* bits, const double* x, std::size_t n);
void masked_add_avx2(const std::uint64_t* bits, double a, double* y, std::size_t n);
void axpy_avx2(double a, const double* x, double* y, std::size_t n);
double squared_distance_avx2(const double* a, const double* b, std::size_t n);
#endif
}  // namespace detail

}  // namespace ghostproj::kernels
