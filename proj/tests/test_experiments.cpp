#include <cmath>
#include <cstdlib>

#include <gtest/gtest.h>

#include "ghostproj/bounds.hpp"
#include "ghostproj/experiments.hpp"
#include "ghostproj/parallel.hpp"
#include "test_support.hpp"

namespace ghostproj {
namespace {

ExperimentConfig small_config(FeatureMode mode) {
    ExperimentConfig c;
    c.mode = mode;
    c.height = 4;
    c.width = 4;
    c.count = 64;
    c.q = 0.2;
    c.trials = 400;
    return c;
}

TEST(Config, Validation) {
    ExperimentConfig c;
    EXPECT_NO_THROW(c.validate());
    c.trials = 0;
    EXPECT_THROW(c.validate(), ValidationError);
    c = ExperimentConfig{};
    c.eps_grid = {0.1, -0.2};
    EXPECT_THROW(c.validate(), ValidationError);
    c = ExperimentConfig{};
    c.mode = FeatureMode::Cytometry;
    c.count = 4;
    EXPECT_THROW(c.validate(), ValidationError);
    c = ExperimentConfig{};
    c.q = 1.0;
    EXPECT_THROW(c.validate(), ValidationError);
}

TEST(VerifyJl, DegeneratePairIsRejected) {
    const ImageObject x = testing::random_matrix(4, 4, 1);
    EXPECT_THROW(verify_jl(x, x, small_config(FeatureMode::GhostImaging)), DegeneratePairError);
    EXPECT_THROW(verify_jl(x, x, small_config(FeatureMode::Cytometry)), DegeneratePairError);
}

TEST(VerifyJl, ShapeMismatch) {
    EXPECT_THROW(verify_jl(ImageObject(4, 4), ImageObject(4, 5), small_config(FeatureMode::GhostImaging)),
                 ValidationError);
    EXPECT_THROW(verify_jl(ImageObject(3, 3), ImageObject(3, 3), small_config(FeatureMode::GhostImaging)),
                 ValidationError);
}

TEST(VerifyJl, GhostImagingMeanAndRates) {
    const auto objs = random_images(2, 4, 4, 11);
    const JlReport r = verify_jl(objs[0], objs[1], small_config(FeatureMode::GhostImaging));
    EXPECT_EQ(r.samples.size(), 400u);
    EXPECT_DOUBLE_EQ(r.expected_mean, 1.0 - 1.0 / 64);
    EXPECT_LE(std::abs(r.mean - r.expected_mean), 3.5 * r.std_error);
    ASSERT_EQ(r.rows.size(), 3u);
    for (const BandRow& row : r.rows) {
        EXPECT_EQ(row.delta, delta_gi(objs[0] - objs[1], 0.2, 64, row.eps));
        EXPECT_TRUE(row.holds());
        EXPECT_LE(row.wide_violations, row.violations);
    }
    EXPECT_TRUE(r.all_hold());
}

TEST(VerifyJl, CytometryMeanMatchesExactExpectation) {
    const auto objs = random_images(2, 4, 4, 12);
    ExperimentConfig c = small_config(FeatureMode::Cytometry);
    c.trials = 2000;
    const JlReport r = verify_jl(objs[0], objs[1], c);
    EXPECT_EQ(r.expected_mean, expected_gc_statistic(objs[0] - objs[1], 64, 0.2));
    EXPECT_LE(std::abs(r.mean - r.expected_mean), 4 * r.std_error);
    EXPECT_TRUE(r.all_hold());
}

TEST(VerifyJl, CytometryBandReducesWhenSumIsZero) {
    ImageObject x = testing::random_matrix(4, 4, 5);
    const double s = matrix_sum(x) / 16.0;
    for (double& v : x.values()) v -= s;
    const JlReport r = verify_jl(x, ImageObject(4, 4), small_config(FeatureMode::Cytometry));
    EXPECT_NEAR(r.sum, 0.0, 1e-12);
    for (const BandRow& row : r.rows) {
        EXPECT_NEAR(row.lower, (1 - row.eps) * r.fro_sq, 1e-12);
        EXPECT_NEAR(row.upper, (1 + row.eps) * r.fro_sq, 1e-12);
    }
}

TEST(VerifyJl, DeterministicAcrossThreadCounts) {
    const auto objs = random_images(2, 4, 4, 13);
    const ExperimentConfig c = small_config(FeatureMode::GhostImaging);
    const JlReport a = verify_jl(objs[0], objs[1], c);
    ::setenv("GHOSTPROJ_THREADS", "3", 1);
    const JlReport b = verify_jl(objs[0], objs[1], c);
    ::unsetenv("GHOSTPROJ_THREADS");
    EXPECT_EQ(a.samples, b.samples);
    EXPECT_EQ(a.mean, b.mean);
}

TEST(VerifyJl, TrialSeedsAreDistinct) {
    EXPECT_NE(trial_seed(1, 0), trial_seed(1, 1));
    EXPECT_NE(trial_seed(1, 0), trial_seed(2, 0));
    EXPECT_EQ(trial_seed(7, 3), rng::mix(7, 3));
}

TEST(Kernels, RbfAndBeta) {
    EXPECT_EQ(rbf_kernel(0.0, 2.0), 1.0);
    EXPECT_DOUBLE_EQ(rbf_kernel(2.0, 0.5), std::exp(-1.0));
    EXPECT_THROW(rbf_kernel(-1.0, 1.0), ValidationError);
    EXPECT_THROW(rbf_kernel(1.0, 0.0), ValidationError);
    EXPECT_DOUBLE_EQ(matched_beta(1.0, 0.5, 5, FeatureMode::GhostImaging, 8), 1.0);
    EXPECT_DOUBLE_EQ(matched_beta(1.0, 0.5, 3, FeatureMode::Cytometry, 2), 1.0);
    EXPECT_THROW(matched_beta(1.0, 0.5, 1, FeatureMode::GhostImaging, 8), ValidationError);
    EXPECT_THROW(matched_beta(0.0, 0.5, 4, FeatureMode::GhostImaging, 8), ValidationError);
}

TEST(KernelGap, ShrinksWithMoreProjections) {
    ExperimentConfig c;
    c.height = 6;
    c.width = 6;
    c.gamma = 1.0 / 36;
    const auto objs = random_images(6, 6, 6, 21);
    const KernelGapReport r = kernel_gap_experiment(objs, c, {32, 512}, 8);
    EXPECT_EQ(r.pairs, 15u);
    ASSERT_EQ(r.rows.size(), 2u);
    EXPECT_EQ(r.rows[0].per_seed_median.size(), 8u);
    EXPECT_GT(r.rows[0].median_gap, r.rows[1].median_gap);
    EXPECT_LT(r.rows[1].median_gap, 0.05);

    c.mode = FeatureMode::Cytometry;
    const KernelGapReport g = kernel_gap_experiment(objs, c, {32, 512}, 8);
    EXPECT_GT(g.rows[0].median_gap, g.rows[1].median_gap);
}

TEST(KernelGap, Errors) {
    ExperimentConfig c;
    EXPECT_THROW(kernel_gap_experiment(random_images(1, 8, 8, 1), c, {64}, 2), ValidationError);
    EXPECT_THROW(kernel_gap_experiment(random_images(2, 8, 8, 1), c, {64}, 0), ValidationError);
    EXPECT_THROW(kernel_gap_experiment(random_images(2, 7, 8, 1), c, {64}, 1), ValidationError);
}

TEST(SynthCells, ShapesAndRange) {
    const CellJitter plain{3.0, 0, 1, 0, 0, 0.5};
    const auto disk = synth_cells(1, CellClass::Disk, 8, 8, 1, plain)[0];
    const auto ring = synth_cells(1, CellClass::Ring, 8, 8, 1, plain)[0];
    EXPECT_EQ(disk(4, 4), 1.0);
    EXPECT_EQ(ring(4, 4), 0.0);
    EXPECT_EQ(disk(0, 0), 0.0);
    EXPECT_GT(matrix_sum(disk), matrix_sum(ring));

    const auto noisy = synth_cells(10, CellClass::Ring, 16, 16, 2, CellJitter{5, 1, 0.8, 0.2, 0.15, 0.5});
    for (const auto& img : noisy)
        for (double v : img.values()) {
            EXPECT_GE(v, 0.0);
            EXPECT_LE(v, 1.0);
        }
    EXPECT_NE(noisy[0], noisy[1]);
    EXPECT_EQ(noisy, synth_cells(10, CellClass::Ring, 16, 16, 2, CellJitter{5, 1, 0.8, 0.2, 0.15, 0.5}));
    EXPECT_THROW(synth_cells(1, CellClass::Disk, 8, 8, 1, CellJitter{4.5, 0, 1, 0, 0, 0.5}), ValidationError);
    EXPECT_THROW(synth_cells(1, CellClass::Disk, 8, 8, 1, CellJitter{3, 0, 1, 0, 0, 1.0}), ValidationError);
}

TEST(Knn, SelfMatchAndTies) {
    std::vector<LabeledSample> train{{{0.0, 0.0}, 0}, {{1.0, 1.0}, 1}, {{5.0, 5.0}, 1}};
    const KernelSpec rbf{KernelSpec::Kind::Rbf, 0.1};
    EXPECT_EQ(kernel_knn_classify(train, train, rbf, 1), 1.0);
    // Equidistant from both classes: the smaller training index wins.
    const std::vector<LabeledSample> mid{{{0.5, 0.5}, 0}};
    EXPECT_EQ(kernel_knn_predict(train, mid, rbf, 1), std::vector<int>{0});
    EXPECT_EQ(kernel_knn_predict(train, mid, rbf, 3), std::vector<int>{1});
    const KernelSpec lin{KernelSpec::Kind::Linear, 1.0};
    EXPECT_EQ(kernel_knn_predict(train, {{{4.0, 4.0}, 1}}, lin, 1), std::vector<int>{1});
    EXPECT_THROW(kernel_knn_predict(train, mid, rbf, 2), ValidationError);
    EXPECT_THROW(kernel_knn_predict({}, mid, rbf, 1), ValidationError);
}

TEST(Classification, SmallDemoIsAccurateAndDeterministic) {
    ClassificationConfig c;
    c.train = 40;
    c.test = 40;
    c.count = 512;
    const ClassificationReport a = classification_demo(c);
    const ClassificationReport b = classification_demo(c);
    EXPECT_EQ(a.image_accuracy, b.image_accuracy);
    EXPECT_EQ(a.ghost_accuracy, b.ghost_accuracy);
    EXPECT_GE(a.image_accuracy, 0.85);
    EXPECT_GE(a.ghost_accuracy, 0.8);
    EXPECT_DOUBLE_EQ(a.gamma, 1.0 / 256);
}

TEST(Misc, MedianAndRandomImages) {
    EXPECT_EQ(median({3, 1, 2}), 2.0);
    EXPECT_EQ(median({4, 1, 2, 3}), 2.5);
    EXPECT_THROW(median({}), ValidationError);
    const auto imgs = random_images(3, 2, 5, 9);
    ASSERT_EQ(imgs.size(), 3u);
    EXPECT_EQ(imgs[0].width(), 5u);
    for (double v : imgs[2].values()) {
        EXPECT_GE(v, 0.0);
        EXPECT_LT(v, 1.0);
    }
}

TEST(Parallel, CoversEveryIndexAndPropagatesErrors) {
    std::vector<int> hit(1000, 0);
    ::setenv("GHOSTPROJ_THREADS", "4", 1);
    EXPECT_EQ(worker_count(), 4u);
    parallel_for(hit.size(), [&](std::size_t k) { hit[k] += 1; });
    EXPECT_THROW(parallel_for(10, [](std::size_t k) {
                     if (k == 7) throw ValidationError("boom");
                 }),
                 ValidationError);
    ::unsetenv("GHOSTPROJ_THREADS");
    for (int h : hit) EXPECT_EQ(h, 1);
}

}  // namespace
}  // namespace ghostproj
