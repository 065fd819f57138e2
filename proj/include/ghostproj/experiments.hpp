#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "ghostproj/core.hpp"

namespace ghostproj {

struct ExperimentConfig {
    FeatureMode mode = FeatureMode::GhostImaging;
    std::size_t height = 8;
    std::size_t width = 8;
    std::size_t count = 512;  // M: patterns (gi) or strip columns (gc)
    double q = 0.1;
    std::vector<double> eps_grid{0.1, 0.2, 0.3};
    std::size_t trials = 1000;
    std::uint64_t base_seed = 1;
    double gamma = 1.0 / 64.0;  // RBF scale on images

    void validate() const;
};

/// Seed of Monte Carlo trial t: rng::mix(base_seed, t).
std::uint64_t trial_seed(std::uint64_t base_seed, std::size_t trial);

struct BandRow {
    double eps = 0.0;
    double delta = 0.0;
    double lower = 0.0;
    double upper = 0.0;
    std::size_t violations = 0;
    double rate = 0.0;
    bool vacuous = false;  // delta >= 1 promises nothing
    // Ghost imaging only: coverage of the wider band [1−1/M−ε, 1+1/M+ε].
    std::size_t wide_violations = 0;
    double wide_rate = 0.0;

    bool holds() const noexcept { return vacuous || rate <= delta; }
};

/// Monte Carlo check of a distance-preservation band.
///
/// Ghost imaging: statistic r = ‖g(X)−g(Y)‖² / (M q(1−q) ‖X−Y‖²), band
/// [1−1/M−ε, 1−1/M+ε]. Cytometry: statistic ‖G(X)−G(Y)‖² / (q(1−q)(M+W−1)),
/// band [(1−ε)‖D‖² − (q/(1−q))S[D]², (1+ε)‖D‖² + (q/(1−q))S[D]²].
struct JlReport {
    ExperimentConfig config;
    double fro_sq = 0.0;
    double sum = 0.0;
    double expected_mean = 0.0;  // 1 − 1/M (gi); expected_gc_statistic (gc)
    double mean = 0.0;
    double variance = 0.0;
    double std_error = 0.0;
    std::vector<BandRow> rows;
    std::vector<double> samples;

    bool all_hold() const noexcept;
};

/// Exact E[‖G(D)‖² / (q(1−q)(M+W−1))] over strip realizations:
/// (M‖D‖² + (q/(1−q)) Σ_m P_m²) / (M+W−1), where P_m sums the pixels of D that
/// overlap the strip in feature m.
double expected_gc_statistic(const ImageObject& diff, std::size_t columns, double q);

JlReport verify_jl_gi(const ImageObject& x, const ImageObject& y, const ExperimentConfig& config);
JlReport verify_jl_gc(const ImageObject& x, const ImageObject& y, const ExperimentConfig& config);
JlReport verify_jl(const ImageObject& x, const ImageObject& y, const ExperimentConfig& config);

/// exp(−scale · d_sq).
double rbf_kernel(double d_sq, double scale);

/// Feature-side RBF scale that matches the image-side one in expectation:
/// γ / ((M−1) q(1−q)) for ghost imaging, γ / (q(1−q)(M+W−1)) for cytometry.
double matched_beta(double gamma, double q, std::size_t count, FeatureMode mode, std::size_t width);

struct KernelGapRow {
    std::size_t count = 0;
    double beta = 0.0;
    double median_gap = 0.0;               // median over seeds of the per-seed median
    std::vector<double> per_seed_median;   // median over pairs, one per mask seed
};

struct KernelGapReport {
    ExperimentConfig config;
    std::size_t pairs = 0;
    std::size_t seeds = 0;
    std::vector<KernelGapRow> rows;
};

/// For each M, draws `seeds` mask sets and records the median over pairs of
/// |κ_γ(X,Y) − κ_β(f(X),f(Y))| with β = matched_beta, where f is the centered
/// ghost feature (gi) or the raw cytometry feature (gc).
KernelGapReport kernel_gap_experiment(const std::vector<std::pair<ImageObject, ImageObject>>& pairs,
                                      const ExperimentConfig& config, const std::vector<std::size_t>& counts,
                                      std::size_t seeds);

/// All unordered pairs of an object set (at least two objects).
KernelGapReport kernel_gap_experiment(const std::vector<ImageObject>& objects, const ExperimentConfig& config,
                                      const std::vector<std::size_t>& counts, std::size_t seeds);

enum class CellClass : int { Disk = 0, Ring = 1 };

struct CellJitter {
    double radius = 5.0;
    double radius_jitter = 0.0;     // uniform ± around radius
    double intensity = 1.0;
    double intensity_jitter = 0.0;  // uniform ± around intensity
    double noise_sigma = 0.0;       // additive Gaussian per pixel
    double inner_ratio = 0.5;       // ring hole radius / outer radius
};

/// Centered filled disks or rings. Cell k draws from
/// Xoshiro256ss(rng::mix(seed, k)): radius offset, intensity offset, then one
/// normal per pixel in row-major order. Values are clipped to [0, 1].
std::vector<ImageObject> synth_cells(std::size_t n, CellClass cls, std::size_t height, std::size_t width,
                                     std::uint64_t seed, const CellJitter& jitter);

struct LabeledSample {
    std::vector<double> features;
    int label = 0;
};

struct KernelSpec {
    enum class Kind { Rbf, Linear };
    Kind kind = Kind::Rbf;
    double scale = 1.0;

    double operator()(std::span<const double> a, std::span<const double> b) const;
};

/// k-NN under the kernel-induced distance κ(a,a) + κ(b,b) − 2κ(a,b). Ties in
/// distance go to the smaller training index; ties in the vote go to the label
/// of the nearest neighbour among the tied labels.
std::vector<int> kernel_knn_predict(const std::vector<LabeledSample>& train, const std::vector<LabeledSample>& test,
                                    const KernelSpec& kernel, std::size_t k);

double kernel_knn_classify(const std::vector<LabeledSample>& train, const std::vector<LabeledSample>& test,
                           const KernelSpec& kernel, std::size_t k);

struct ClassificationConfig {
    std::size_t height = 16;
    std::size_t width = 16;
    std::size_t train = 200;
    std::size_t test = 200;
    std::size_t count = 1024;
    double q = 0.1;
    std::size_t k = 1;
    std::uint64_t seed = 1;
    CellJitter jitter{5.0, 1.0, 0.8, 0.2, 0.15, 0.5};
};

struct ClassificationReport {
    ClassificationConfig config;
    double gamma = 0.0;
    double beta = 0.0;
    double image_accuracy = 0.0;
    double ghost_accuracy = 0.0;
};

/// Disk-vs-ring corpus classified twice: RBF on images (γ = 1/(H·W)) and RBF
/// on centered ghost features with the matched β.
ClassificationReport classification_demo(const ClassificationConfig& config);

/// Pearson correlation between the rescaled correlation image from M fresh
/// patterns and the ground truth.
double reconstruction_correlation(const ImageObject& truth, double q, std::size_t count, std::uint64_t seed);

/// H×W images with entries uniform in [0, 1), image k drawn from
/// Xoshiro256ss(rng::mix(seed, k)).
std::vector<ImageObject> random_images(std::size_t n, std::size_t height, std::size_t width, std::uint64_t seed);

double median(std::vector<double> values);

}  // namespace ghostproj
