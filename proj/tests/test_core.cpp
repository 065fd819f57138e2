#include <gtest/gtest.h>

#include "ghostproj/core.hpp"
#include "test_support.hpp"

namespace ghostproj {
namespace {

TEST(Core, FrobeniusNormSq) {
    EXPECT_EQ(frobenius_norm_sq(ImageObject::from_rows({{1, 2}, {3, 4}})), 30.0);
    EXPECT_EQ(frobenius_norm_sq(ImageObject(4, 4)), 0.0);
    EXPECT_EQ(frobenius_norm_sq(ImageObject::from_rows({{-1, 1}, {1, -1}})), 4.0);
}

TEST(Core, MatrixSum) {
    EXPECT_EQ(matrix_sum(ImageObject::from_rows({{1, 2}, {3, 4}})), 10.0);
    EXPECT_EQ(matrix_sum(ImageObject::from_rows({{-1, 1}, {1, -1}})), 0.0);
    EXPECT_EQ(matrix_sum(ImageObject::from_rows({{5}})), 5.0);
}

TEST(Core, L2NormSq) {
    const std::vector<double> a{3, 4}, empty{}, c{-2, 0, 2};
    EXPECT_EQ(l2_norm_sq(a), 25.0);
    EXPECT_EQ(l2_norm_sq(empty), 0.0);
    EXPECT_EQ(l2_norm_sq(c), 8.0);
}

TEST(Core, RejectsEmptyAndNonFinite) {
    EXPECT_THROW(ImageObject(0, 3), ValidationError);
    EXPECT_THROW(ImageObject(3, 0), ValidationError);
    EXPECT_THROW(ImageObject(2, 2, {1, 2, 3}), ValidationError);
    EXPECT_THROW(ImageObject(1, 2, {1, std::nan("")}), ValidationError);
    EXPECT_THROW(ImageObject::from_rows({{1, 2}, {3}}), ValidationError);
    EXPECT_THROW(ImageObject::from_rows({}), ValidationError);
}

TEST(Core, SubtractionNeedsSameShape) {
    EXPECT_THROW(ImageObject(2, 2) - ImageObject(2, 3), ValidationError);
}

TEST(CoreProperty, FrobeniusMatchesFlattenedL2AndSumsAreAdditive) {
    for (std::uint64_t s = 0; s < 100; ++s) {
        const std::size_t h = 1 + s % 7, w = 1 + (s / 7) % 5;
        const ImageObject x = testing::random_matrix(h, w, 1000 + s, -3, 3);
        const ImageObject y = testing::random_matrix(h, w, 5000 + s, -3, 3);
        EXPECT_EQ(frobenius_norm_sq(x), l2_norm_sq(x.values()));
        const double lhs = matrix_sum(x - y);
        const double rhs = matrix_sum(x) - matrix_sum(y);
        EXPECT_NEAR(lhs, rhs, 1e-12 * std::max({1.0, std::abs(matrix_sum(x)), std::abs(matrix_sum(y))}));
    }
}

TEST(Core, PearsonCorrelation) {
    const std::vector<double> a{1, 2, 3, 4}, b{2, 4, 6, 8}, c{4, 3, 2, 1}, flat{1, 1, 1, 1};
    EXPECT_NEAR(pearson_correlation(a, b), 1.0, 1e-15);
    EXPECT_NEAR(pearson_correlation(a, c), -1.0, 1e-15);
    EXPECT_EQ(pearson_correlation(a, flat), 0.0);
}

TEST(Core, ModeParsing) {
    EXPECT_EQ(parse_mode("gi"), FeatureMode::GhostImaging);
    EXPECT_EQ(parse_mode("cytometry"), FeatureMode::Cytometry);
    EXPECT_THROW(parse_mode("x"), ValidationError);
}

}  // namespace
}  // namespace ghostproj
