#pragma once

#include <cstddef>
#include <vector>

#include "ghostproj/core.hpp"

namespace ghostproj::oracle {

/// Moments of centered Bernoulli(q) variables b, b' (independent), obtained
/// by summing over the outcomes {0,1} and {0,1}² with their probabilities.
struct MomentTable {
    double q = 0.0;
    double mean_sq = 0.0;     // E[(b−q)²]
    double var_sq = 0.0;      // V[(b−q)²]
    double mean_cross = 0.0;  // E[(b−q)(b'−q)]
    double var_cross = 0.0;   // V[(b−q)(b'−q)]
};

MomentTable bernoulli_product_moments(double q);

/// Largest number of mask bits the enumerators accept (2^20 realizations).
inline constexpr std::size_t kMaxEnumerationBits = 20;

/// Exact expectations over every ghost-imaging mask realization.
struct GiStatistics {
    std::size_t realizations = 0;
    double total_weight = 0.0;
    std::vector<double> mean_raw;     // E[G_m]
    double mean_scaled_norm = 0.0;    // E[‖g(X)‖² / (M q(1−q))]
    std::vector<double> mean_recon;   // E[X̃(i,j)], row-major
    double fro_sq = 0.0;
    double sum = 0.0;
};

/// Requires M·H·W <= kMaxEnumerationBits.
GiStatistics exact_gi_statistics(const ImageObject& x, std::size_t count, double q);

/// Exact expectations over every cytometry strip realization.
struct GcStatistics {
    std::size_t realizations = 0;
    double total_weight = 0.0;
    std::vector<double> mean_raw;     // E[G_m], m = 1 … M+W−1
    double mean_scaled_norm = 0.0;    // E[‖G(X)‖² / (q(1−q)(M+W−1))]
    double fro_sq = 0.0;
    double sum_correction = 0.0;      // (q/(1−q)) S[X]²
};

/// Requires H·M <= kMaxEnumerationBits and M >= W.
GcStatistics exact_gc_statistics(const ImageObject& x, std::size_t columns, double q);

}  // namespace ghostproj::oracle
