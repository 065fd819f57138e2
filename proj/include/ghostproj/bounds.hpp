#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "ghostproj/core.hpp"

namespace ghostproj {

/// Smallest sub-Gaussian proxy variance of a Bernoulli(q) variable,
/// (1/2 − q) / log(1/q − 1), continued to 1/4 at q = 1/2.
double optimal_proxy_variance(double q);

/// Variance-like term for ghost imaging:
/// c Σ X(p)⁴ + 4 Σ_{p<p'} (X(p) X(p'))², c = (1−2q)² / (q(1−q)).
double gamma_q(const ImageObject& x, double q);

/// Range-like term for ghost imaging:
/// max{ 2 (1−q)/q · max_{p≠p'} |X(p) X(p')|,  |1−2q|/q · max_p X(p)² }.
double lambda_q(const ImageObject& x, double q);

/// Lagged row correlation Σ_{j=0}^{W−1−lag} X(i,j) X(i',j+lag).
double row_lag_correlation(const ImageObject& x, std::size_t i, std::size_t i2, std::size_t lag);

/// Variance-like term for cytometry:
/// c Σ_i (Σ_j X(i,j)²)² + 4 Σ C(i,i',lag)², where the second sum runs over
/// lag 0 with i < i' and lags 1 … W−1 with every i'.
double psi_q(const ImageObject& x, double q);

/// Range-like term for cytometry: the largest of 2 (1−q)/q · |C(i,i',lag)| over
/// the same (i, i', lag) set as psi_q and |1−2q|/q · Σ_j X(i,j)² over rows.
double phi_q(const ImageObject& x, double q);

/// Failure probability for the ghost-imaging distance band, evaluated on the
/// difference image D = X − Y. Throws DegeneratePairError when ‖D‖ = 0.
double delta_gi(const ImageObject& diff, double q, std::size_t count, double eps);

/// Failure probability for the cytometry distance band on D = X − Y.
double delta_gc(const ImageObject& diff, double q, std::size_t count, double eps);

struct BoundReport {
    FeatureMode mode = FeatureMode::GhostImaging;
    double q = 0.0;
    std::size_t count = 0;
    double gamma = 0.0;   // Γ_q or Ψ_q
    double lambda = 0.0;  // Λ_q or Φ_q
    double fro_sq = 0.0;
    double s_sq = 0.0;    // S[D]², cytometry only
    std::vector<std::pair<double, double>> delta_of_eps;
};

BoundReport evaluate_bounds(const ImageObject& diff, FeatureMode mode, double q, std::size_t count,
                            const std::vector<double>& eps_grid);

}  // namespace ghostproj
