#include <cmath>

#include <gtest/gtest.h>

#include "ghostproj/experiments.hpp"
#include "ghostproj/oracle.hpp"
#include "test_support.hpp"

namespace ghostproj {
namespace {

TEST(Moments, ClosedForms) {
    for (double q : {0.05, 0.1, 0.3, 0.5, 0.9}) {
        const oracle::MomentTable t = oracle::bernoulli_product_moments(q);
        const double v = q * (1 - q);
        EXPECT_TRUE(testing::rel_close(t.mean_sq, v, 1e-12));
        EXPECT_NEAR(t.mean_cross, 0.0, 1e-15);
        EXPECT_TRUE(testing::rel_close(t.var_cross, v * v, 1e-12));
        if (q == 0.5) {
            EXPECT_NEAR(t.var_sq, 0.0, 1e-15);
        } else {
            EXPECT_TRUE(testing::rel_close(t.var_sq, v * (1 - 2 * q) * (1 - 2 * q), 1e-12));
        }
    }
    EXPECT_THROW(oracle::bernoulli_product_moments(0.0), ValidationError);
}

TEST(GiOracle, ExpectationIdentities) {
    for (std::uint64_t s = 0; s < 20; ++s) {
        const ImageObject x = testing::random_matrix(2, 2, 40 + s, -2, 2);
        const double q = 0.1 + 0.04 * static_cast<double>(s);
        const oracle::GiStatistics st = oracle::exact_gi_statistics(x, 2, q);
        EXPECT_EQ(st.realizations, 256u);
        EXPECT_NEAR(st.total_weight, 1.0, 1e-13);
        EXPECT_TRUE(testing::rel_close(st.mean_scaled_norm, 0.5 * frobenius_norm_sq(x), 1e-10));
        for (std::size_t p = 0; p < 4; ++p) {
            EXPECT_TRUE(testing::rel_close(st.mean_recon[p], 0.5 * q * (1 - q) * x.values()[p], 1e-10));
        }
        for (double g : st.mean_raw) EXPECT_TRUE(testing::rel_close(g, q * matrix_sum(x), 1e-10));
    }
}

TEST(GiOracle, OtherShapes) {
    const ImageObject x = testing::random_matrix(1, 3, 2);
    const oracle::GiStatistics st = oracle::exact_gi_statistics(x, 5, 0.3);
    EXPECT_EQ(st.realizations, std::size_t{1} << 15);
    EXPECT_TRUE(testing::rel_close(st.mean_scaled_norm, 0.8 * frobenius_norm_sq(x), 1e-10));
    EXPECT_THROW(oracle::exact_gi_statistics(ImageObject(3, 3), 3, 0.5), ValidationError);
}

TEST(GcOracle, OneRowHandExpansion) {
    const double a = 0.4, b = -1.1, q = 0.2;
    const oracle::GcStatistics st = oracle::exact_gc_statistics(ImageObject::from_rows({{a, b}}), 3, q);
    EXPECT_EQ(st.realizations, 8u);
    ASSERT_EQ(st.mean_raw.size(), 4u);
    EXPECT_NEAR(st.mean_raw[0], q * b, 1e-15);
    EXPECT_NEAR(st.mean_raw[1], q * (a + b), 1e-15);
    EXPECT_NEAR(st.mean_raw[2], q * (a + b), 1e-15);
    EXPECT_NEAR(st.mean_raw[3], q * a, 1e-15);
    // E‖G‖² = Σ_m V[G_m] + E[G_m]² with V[b x] = q(1−q)x².
    const double v = q * (1 - q);
    const double e2 = v * (b * b + 2 * (a * a + b * b) + a * a) + q * q * (b * b + 2 * (a + b) * (a + b) + a * a);
    EXPECT_TRUE(testing::rel_close(st.mean_scaled_norm, e2 / (v * 4), 1e-12));
}

TEST(GcOracle, MatchesExpectedStatistic) {
    for (std::uint64_t s = 0; s < 10; ++s) {
        const std::size_t h = 1 + s % 3, w = 1 + s % 2, m = 3 + s % 3;
        const ImageObject d = testing::random_matrix(h, w, 70 + s, -1, 1);
        const double q = 0.1 + 0.07 * static_cast<double>(s);
        const oracle::GcStatistics st = oracle::exact_gc_statistics(d, m, q);
        EXPECT_TRUE(testing::rel_close(st.mean_scaled_norm, expected_gc_statistic(d, m, q), 1e-11));
        EXPECT_NEAR(st.total_weight, 1.0, 1e-13);
    }
}

TEST(GcOracle, ScaleHomogeneity) {
    const ImageObject d = testing::random_matrix(2, 2, 3);
    ImageObject d3 = d;
    d3 *= 3.0;
    const double base = oracle::exact_gc_statistics(d, 4, 0.3).mean_scaled_norm;
    EXPECT_TRUE(testing::rel_close(oracle::exact_gc_statistics(d3, 4, 0.3).mean_scaled_norm, 9 * base, 1e-12));
    EXPECT_THROW(oracle::exact_gc_statistics(d, 1, 0.3), ValidationError);
    EXPECT_THROW(oracle::exact_gc_statistics(ImageObject(3, 2), 7, 0.3), ValidationError);
}

}  // namespace
}  // namespace ghostproj
