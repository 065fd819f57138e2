#include "ghostproj/kernels.hpp"

namespace ghostproj::kernels::detail {

namespace {

inline bool bit_at(const std::uint64_t* bits, std::size_t k) noexcept {
    return (bits[k >> 6] >> (k & 63)) & 1U;
}

inline double combine(const double (&p)[4]) noexcept { return (p[0] + p[1]) + (p[2] + p[3]); }

}  // namespace

double masked_sum_scalar(const std::uint64_t* bits, const double* x, std::size_t n) {
    double p[4] = {0.0, 0.0, 0.0, 0.0};
    for (std::size_t k = 0; k < n; ++k) p[k & 3] += bit_at(bits, k) ? x[k] : 0.0;
    return combine(p);
}

void masked_add_scalar(const std::uint64_t* bits, double a, double* y, std::size_t n) {
    for (std::size_t k = 0; k < n; ++k) y[k] += bit_at(bits, k) ? a : 0.0;
}

void axpy_scalar(double a, const double* x, double* y, std::size_t n) {
    for (std::size_t k = 0; k < n; ++k) {
        const double prod = a * x[k];
        y[k] += prod;
    }
}

double squared_distance_scalar(const double* a, const double* b, std::size_t n) {
    double p[4] = {0.0, 0.0, 0.0, 0.0};
    for (std::size_t k = 0; k < n; ++k) {
        const double d = a[k] - b[k];
        const double sq = d * d;
        p[k & 3] += sq;
    }
    return combine(p);
}

}  // namespace ghostproj::kernels::detail
