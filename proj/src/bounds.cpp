#include "ghostproj/bounds.hpp"

#include <algorithm>
#include <cmath>

#include "ghostproj/masks.hpp"

namespace ghostproj {

namespace {

double intensity_coefficient(double q) { return (1.0 - 2.0 * q) * (1.0 - 2.0 * q) / (q * (1.0 - q)); }

void check_delta_args(const ImageObject& diff, double q, std::size_t count, double eps, double& fro_sq) {
    check_probability(q);
    if (count < 2) throw ValidationError("delta needs M >= 2");
    if (!(eps > 0.0)) throw ValidationError("eps must be positive");
    fro_sq = frobenius_norm_sq(diff);
    if (fro_sq == 0.0) throw DegeneratePairError("difference image is zero: the bound is vacuous for identical objects");
}

double delta_from(double var_term, double range_term, double count, double eps) {
    const double exponent = -(eps * eps * count) / (2.0 * (var_term + range_term * eps));
    return 2.0 * std::exp(exponent);
}

}  // namespace

double optimal_proxy_variance(double q) {
    check_probability(q);
    // (1/2 − q)/log(1/q − 1) rewritten with log((1−q)/q) = −2 atanh(2q − 1),
    // which stays accurate as q approaches 1/2.
    const double u = q - 0.5;
    if (u == 0.0) return 0.25;
    return u / (2.0 * std::atanh(2.0 * u));
}

double gamma_q(const ImageObject& x, double q) {
    check_probability(q);
    const auto v = x.values();
    double fourth = 0.0;
    for (double e : v) fourth += (e * e) * (e * e);
    double pairs = 0.0;
    for (std::size_t p = 0; p < v.size(); ++p) {
        for (std::size_t p2 = p + 1; p2 < v.size(); ++p2) {
            const double prod = v[p] * v[p2];
            pairs += prod * prod;
        }
    }
    return intensity_coefficient(q) * fourth + 4.0 * pairs;
}

double lambda_q(const ImageObject& x, double q) {
    check_probability(q);
    // The largest |X(p) X(p')| over distinct pixels is the product of the two
    // largest magnitudes.
    double first = 0.0, second = 0.0;
    for (double e : x.values()) {
        const double a = std::abs(e);
        if (a > first) {
            second = first;
            first = a;
        } else if (a > second) {
            second = a;
        }
    }
    const double pair_term = x.size() > 1 ? 2.0 * ((1.0 - q) / q) * (first * second) : 0.0;
    const double pixel_term = (std::abs(1.0 - 2.0 * q) / q) * (first * first);
    return std::max(pair_term, pixel_term);
}

double row_lag_correlation(const ImageObject& x, std::size_t i, std::size_t i2, std::size_t lag) {
    const std::size_t w = x.width();
    double s = 0.0;
    for (std::size_t j = 0; j + lag < w; ++j) s += x(i, j) * x(i2, j + lag);
    return s;
}

double psi_q(const ImageObject& x, double q) {
    check_probability(q);
    const std::size_t h = x.height();
    const std::size_t w = x.width();
    double rows = 0.0;
    for (std::size_t i = 0; i < h; ++i) {
        const double e = l2_norm_sq(x.row(i));
        rows += e * e;
    }
    double pairs = 0.0;
    for (std::size_t i = 0; i < h; ++i) {
        for (std::size_t lag = 0; lag < w; ++lag) {
            for (std::size_t i2 = lag == 0 ? i + 1 : 0; i2 < h; ++i2) {
                const double c = row_lag_correlation(x, i, i2, lag);
                pairs += c * c;
            }
        }
    }
    return intensity_coefficient(q) * rows + 4.0 * pairs;
}

double phi_q(const ImageObject& x, double q) {
    check_probability(q);
    const std::size_t h = x.height();
    const std::size_t w = x.width();
    double max_corr = 0.0;
    for (std::size_t i = 0; i < h; ++i) {
        for (std::size_t lag = 0; lag < w; ++lag) {
            for (std::size_t i2 = lag == 0 ? i + 1 : 0; i2 < h; ++i2) {
                max_corr = std::max(max_corr, std::abs(row_lag_correlation(x, i, i2, lag)));
            }
        }
    }
    double max_row = 0.0;
    for (std::size_t i = 0; i < h; ++i) max_row = std::max(max_row, l2_norm_sq(x.row(i)));
    return std::max(2.0 * ((1.0 - q) / q) * max_corr, (std::abs(1.0 - 2.0 * q) / q) * max_row);
}

double delta_gi(const ImageObject& diff, double q, std::size_t count, double eps) {
    double fro_sq = 0.0;
    check_delta_args(diff, q, count, eps, fro_sq);
    const double m = static_cast<double>(count);
    const double var_term = (1.0 + 2.0 / (m * m)) * gamma_q(diff, q) / (fro_sq * fro_sq);
    const double range_term = lambda_q(diff, q) / fro_sq;
    return delta_from(var_term, range_term, m, eps);
}

double delta_gc(const ImageObject& diff, double q, std::size_t count, double eps) {
    double fro_sq = 0.0;
    check_delta_args(diff, q, count, eps, fro_sq);
    const double var_term = psi_q(diff, q) / (fro_sq * fro_sq);
    const double range_term = phi_q(diff, q) / fro_sq;
    return delta_from(var_term, range_term, static_cast<double>(count), eps);
}

BoundReport evaluate_bounds(const ImageObject& diff, FeatureMode mode, double q, std::size_t count,
                            const std::vector<double>& eps_grid) {
    BoundReport r;
    r.mode = mode;
    r.q = q;
    r.count = count;
    r.fro_sq = frobenius_norm_sq(diff);
    const bool gi = mode == FeatureMode::GhostImaging;
    r.gamma = gi ? gamma_q(diff, q) : psi_q(diff, q);
    r.lambda = gi ? lambda_q(diff, q) : phi_q(diff, q);
    if (!gi) {
        const double s = matrix_sum(diff);
        r.s_sq = s * s;
    }
    for (double eps : eps_grid) {
        r.delta_of_eps.emplace_back(eps, gi ? delta_gi(diff, q, count, eps) : delta_gc(diff, q, count, eps));
    }
    return r;
}

}  // namespace ghostproj
