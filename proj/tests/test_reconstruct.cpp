#include <gtest/gtest.h>

#include "ghostproj/experiments.hpp"
#include "ghostproj/features.hpp"
#include "ghostproj/reconstruct.hpp"
#include "test_support.hpp"

namespace ghostproj {
namespace {

TEST(Reconstruct, SinglePatternGivesZero) {
    const ImageObject x = testing::random_matrix(4, 4, 1);
    const MaskSet masks = generate_gi_masks(4, 4, 1, 0.5, 1);
    const ImageObject r = reconstruct_image(gi_features(x, masks), masks);
    for (double v : r.values()) EXPECT_EQ(v, 0.0);
}

TEST(Reconstruct, ZeroObjectGivesZero) {
    const MaskSet masks = generate_gi_masks(4, 4, 50, 0.5, 1);
    const ImageObject r = reconstruct_image(gi_features(ImageObject(4, 4), masks), masks);
    for (double v : r.values()) EXPECT_EQ(v, 0.0);
}

TEST(Reconstruct, LengthMismatch) {
    const MaskSet masks = generate_gi_masks(4, 4, 5, 0.5, 1);
    FeatureVector fv = gi_features(ImageObject(4, 4), generate_gi_masks(4, 4, 6, 0.5, 1));
    EXPECT_THROW(reconstruct_image(fv, masks), ValidationError);
    fv.mode = FeatureMode::Cytometry;
    EXPECT_THROW(reconstruct_image(fv, generate_gi_masks(4, 4, 6, 0.5, 1)), ValidationError);
}

TEST(Reconstruct, MatchesDefinitionDirectly) {
    const ImageObject x = testing::random_matrix(3, 5, 8);
    const MaskSet masks = generate_gi_masks(3, 5, 40, 0.3, 2);
    const FeatureVector fv = gi_features(x, masks);
    const ImageObject r = reconstruct_image(fv, masks);
    for (std::size_t i = 0; i < 3; ++i) {
        for (std::size_t j = 0; j < 5; ++j) {
            double s = 0;
            for (std::size_t m = 0; m < 40; ++m) s += (fv.raw[m] - fv.mean) * (masks.bit(m, i, j) ? 1 : 0);
            EXPECT_NEAR(r(i, j), s / 40.0, 1e-12);
        }
    }
}

TEST(Reconstruct, LinearInFeatures) {
    const MaskSet masks = generate_gi_masks(4, 3, 25, 0.4, 3);
    const ImageObject x = testing::random_matrix(4, 3, 1), y = testing::random_matrix(4, 3, 2);
    const ImageObject rx = reconstruct_image(gi_features(x, masks), masks);
    const ImageObject ry = reconstruct_image(gi_features(y, masks), masks);
    const ImageObject rd = reconstruct_image(gi_features(x - y, masks), masks);
    for (std::size_t k = 0; k < rd.size(); ++k) EXPECT_NEAR(rd.values()[k], rx.values()[k] - ry.values()[k], 1e-12);
}

TEST(Rescale, DivisorAndErrors) {
    const ImageObject one = ImageObject::from_rows({{1.0}});
    EXPECT_DOUBLE_EQ(rescale_reconstruction(one, 0.5, 2)(0, 0), 1.0 / 0.125);
    EXPECT_EQ(rescale_reconstruction(ImageObject(2, 2), 0.3, 10), ImageObject(2, 2));
    EXPECT_THROW(rescale_reconstruction(one, 0.5, 1), ValidationError);
    EXPECT_THROW(rescale_reconstruction(one, 1.0, 5), ValidationError);
}

TEST(Rescale, AverageOverTrialsApproachesTruth) {
    const ImageObject x = ImageObject::from_rows({{1, 0, 0.5}, {0.25, 1, 0}});
    const std::size_t m = 12;
    const int trials = 1000;
    ImageObject avg(2, 3);
    std::vector<double> sumsq(6, 0.0);
    for (int t = 0; t < trials; ++t) {
        const MaskSet masks = generate_gi_masks(2, 3, m, 0.5, 77 + t);
        const ImageObject r = rescale_reconstruction(reconstruct_image(gi_features(x, masks), masks), 0.5, m);
        avg += r;
        for (std::size_t k = 0; k < 6; ++k) sumsq[k] += r.values()[k] * r.values()[k];
    }
    avg *= 1.0 / trials;
    for (std::size_t k = 0; k < 6; ++k) {
        const double mean = avg.values()[k];
        const double se = std::sqrt((sumsq[k] / trials - mean * mean) / trials);
        EXPECT_LE(std::abs(mean - x.values()[k]), 4 * se) << "pixel " << k;
    }
}

TEST(Reconstruct, QualityGrowsWithPatternCount) {
    const auto disk = synth_cells(1, CellClass::Disk, 8, 8, 1, CellJitter{3.0, 0, 1, 0, 0, 0.5})[0];
    std::vector<double> medians;
    for (std::size_t m : {64u, 320u, 1280u}) {
        std::vector<double> c;
        for (std::uint64_t s = 0; s < 15; ++s) c.push_back(reconstruction_correlation(disk, 0.5, m, s));
        medians.push_back(median(c));
    }
    EXPECT_LE(medians[0], medians[1]);
    EXPECT_LE(medians[1], medians[2]);
}

}  // namespace
}  // namespace ghostproj
