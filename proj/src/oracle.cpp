#include "ghostproj/oracle.hpp"

#include <bit>
#include <cmath>
#include <cstdint>

#include "ghostproj/masks.hpp"
#include "ghostproj/parallel.hpp"

namespace ghostproj::oracle {

namespace {

// Probability of one realization with k ones among n bits, by k.
std::vector<double> realization_weights(std::size_t n, double q) {
    const double lq = std::log(q);
    const double l1q = std::log1p(-q);
    std::vector<double> w(n + 1);
    for (std::size_t k = 0; k <= n; ++k) {
        w[k] = std::exp(static_cast<double>(k) * lq + static_cast<double>(n - k) * l1q);
    }
    return w;
}

// Realizations are split into fixed blocks; partial sums are reduced in block
// order so the result does not depend on the worker count.
constexpr std::size_t kBlocks = 64;

void check_budget(std::size_t nbits) {
    if (nbits > kMaxEnumerationBits) {
        throw ValidationError("enumeration needs " + std::to_string(nbits) + " mask bits; the budget is " +
                              std::to_string(kMaxEnumerationBits));
    }
}

}  // namespace

MomentTable bernoulli_product_moments(double q) {
    check_probability(q);
    const double prob[2] = {1.0 - q, q};
    MomentTable t;
    t.q = q;
    double m2 = 0.0, m4 = 0.0;
    for (int b = 0; b <= 1; ++b) {
        const double c = b - q;
        m2 += prob[b] * c * c;
        m4 += prob[b] * c * c * c * c;
    }
    t.mean_sq = m2;
    t.var_sq = m4 - m2 * m2;
    double e1 = 0.0, e2 = 0.0;
    for (int b = 0; b <= 1; ++b) {
        for (int b2 = 0; b2 <= 1; ++b2) {
            const double p = prob[b] * prob[b2];
            const double prod = (b - q) * (b2 - q);
            e1 += p * prod;
            e2 += p * prod * prod;
        }
    }
    t.mean_cross = e1;
    t.var_cross = e2 - e1 * e1;
    return t;
}

GiStatistics exact_gi_statistics(const ImageObject& x, std::size_t count, double q) {
    check_probability(q);
    if (count == 0) throw ValidationError("count must be >= 1");
    const std::size_t pixels = x.size();
    const std::size_t nbits = count * pixels;
    check_budget(nbits);
    const std::vector<double> weights = realization_weights(nbits, q);
    const std::uint64_t total = std::uint64_t{1} << nbits;
    const auto xv = x.values();
    const double scale = 1.0 / (static_cast<double>(count) * q * (1.0 - q));

    struct Partial {
        double weight = 0.0;
        double scaled = 0.0;
        std::vector<double> raw, recon;
    };
    std::vector<Partial> partials(kBlocks);

    parallel_for(kBlocks, [&](std::size_t block) {
        Partial& part = partials[block];
        part.raw.assign(count, 0.0);
        part.recon.assign(pixels, 0.0);
        std::vector<double> g(count);
        const std::uint64_t begin = total * block / kBlocks;
        const std::uint64_t end = total * (block + 1) / kBlocks;
        for (std::uint64_t r = begin; r < end; ++r) {
            const double w = weights[static_cast<std::size_t>(std::popcount(r))];
            // Bit m*pixels + p of r is pixel p of pattern m.
            double mean = 0.0;
            for (std::size_t m = 0; m < count; ++m) {
                double s = 0.0;
                for (std::size_t p = 0; p < pixels; ++p) {
                    if ((r >> (m * pixels + p)) & 1U) s += xv[p];
                }
                g[m] = s;
                mean += s;
                part.raw[m] += w * s;
            }
            mean /= static_cast<double>(count);
            double norm = 0.0;
            for (std::size_t m = 0; m < count; ++m) {
                g[m] -= mean;
                norm += g[m] * g[m];
            }
            part.scaled += w * norm * scale;
            for (std::size_t p = 0; p < pixels; ++p) {
                double acc = 0.0;
                for (std::size_t m = 0; m < count; ++m) {
                    if ((r >> (m * pixels + p)) & 1U) acc += g[m];
                }
                part.recon[p] += w * acc / static_cast<double>(count);
            }
            part.weight += w;
        }
    });

    GiStatistics st;
    st.realizations = static_cast<std::size_t>(total);
    st.mean_raw.assign(count, 0.0);
    st.mean_recon.assign(pixels, 0.0);
    for (const Partial& part : partials) {
        st.total_weight += part.weight;
        st.mean_scaled_norm += part.scaled;
        for (std::size_t m = 0; m < count; ++m) st.mean_raw[m] += part.raw[m];
        for (std::size_t p = 0; p < pixels; ++p) st.mean_recon[p] += part.recon[p];
    }
    st.fro_sq = frobenius_norm_sq(x);
    st.sum = matrix_sum(x);
    return st;
}

GcStatistics exact_gc_statistics(const ImageObject& x, std::size_t columns, double q) {
    check_probability(q);
    const std::size_t h = x.height();
    const std::size_t w = x.width();
    if (columns < w) throw ValidationError("mask width must be >= object width");
    const std::size_t nbits = h * columns;
    check_budget(nbits);
    const std::size_t len = columns + w - 1;
    const std::vector<double> weights = realization_weights(nbits, q);
    const std::uint64_t total = std::uint64_t{1} << nbits;
    const double scale = 1.0 / (q * (1.0 - q) * static_cast<double>(len));

    struct Partial {
        double weight = 0.0;
        double scaled = 0.0;
        std::vector<double> raw;
    };
    std::vector<Partial> partials(kBlocks);

    parallel_for(kBlocks, [&](std::size_t block) {
        Partial& part = partials[block];
        part.raw.assign(len, 0.0);
        const std::uint64_t begin = total * block / kBlocks;
        const std::uint64_t end = total * (block + 1) / kBlocks;
        for (std::uint64_t r = begin; r < end; ++r) {
            const double wt = weights[static_cast<std::size_t>(std::popcount(r))];
            // Bit i*M + (c−1) of r is B(i, c) for 1-based column c.
            auto mask_at = [&](std::size_t i, long long c) -> double {
                if (c < 1 || c > static_cast<long long>(columns)) return 0.0;
                return ((r >> (i * columns + static_cast<std::size_t>(c - 1))) & 1U) ? 1.0 : 0.0;
            };
            double norm = 0.0;
            for (std::size_t m = 1; m <= len; ++m) {
                double s = 0.0;
                for (std::size_t i = 0; i < h; ++i) {
                    for (std::size_t j = 1; j <= w; ++j) {
                        const long long c = static_cast<long long>(j + m) - static_cast<long long>(w);
                        s += mask_at(i, c) * x(i, j - 1);
                    }
                }
                part.raw[m - 1] += wt * s;
                norm += s * s;
            }
            part.scaled += wt * norm * scale;
            part.weight += wt;
        }
    });

    GcStatistics st;
    st.realizations = static_cast<std::size_t>(total);
    st.mean_raw.assign(len, 0.0);
    for (const Partial& part : partials) {
        st.total_weight += part.weight;
        st.mean_scaled_norm += part.scaled;
        for (std::size_t m = 0; m < len; ++m) st.mean_raw[m] += part.raw[m];
    }
    st.fro_sq = frobenius_norm_sq(x);
    const double s = matrix_sum(x);
    st.sum_correction = (q / (1.0 - q)) * s * s;
    return st;
}

}  // namespace ghostproj::oracle
