#include "ghostproj/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "ghostproj/bounds.hpp"
#include "ghostproj/features.hpp"
#include "ghostproj/masks.hpp"
#include "ghostproj/parallel.hpp"
#include "ghostproj/reconstruct.hpp"
#include "ghostproj/rng.hpp"

namespace ghostproj {

void ExperimentConfig::validate() const {
    if (height == 0 || width == 0 || count == 0) throw ValidationError("H, W and M must be >= 1");
    check_probability(q);
    if (trials == 0) throw ValidationError("trials must be >= 1");
    for (double eps : eps_grid) {
        if (!(eps > 0.0)) throw ValidationError("eps values must be positive");
    }
    if (!(gamma > 0.0)) throw ValidationError("gamma must be positive");
    if (mode == FeatureMode::GhostImaging && count < 2) throw ValidationError("ghost imaging needs M >= 2");
    if (mode == FeatureMode::Cytometry && count < width) throw ValidationError("cytometry needs M >= W");
}

std::uint64_t trial_seed(std::uint64_t base_seed, std::size_t trial) { return rng::mix(base_seed, trial); }

bool JlReport::all_hold() const noexcept {
    return std::all_of(rows.begin(), rows.end(), [](const BandRow& r) { return r.holds(); });
}

double median(std::vector<double> values) {
    if (values.empty()) throw ValidationError("median of an empty sample");
    std::sort(values.begin(), values.end());
    const std::size_t n = values.size();
    return n % 2 ? values[n / 2] : 0.5 * (values[n / 2 - 1] + values[n / 2]);
}

namespace {

void check_pair(const ImageObject& x, const ImageObject& y, const ExperimentConfig& config) {
    config.validate();
    if (!x.same_shape(y)) throw ValidationError("X and Y must have the same shape");
    if (x.height() != config.height || x.width() != config.width) {
        throw ValidationError("objects do not match the configured H x W");
    }
}

void summarize(JlReport& report) {
    const double n = static_cast<double>(report.samples.size());
    double mean = 0.0;
    for (double s : report.samples) mean += s;
    mean /= n;
    double var = 0.0;
    for (double s : report.samples) var += (s - mean) * (s - mean);
    var = report.samples.size() > 1 ? var / (n - 1.0) : 0.0;
    report.mean = mean;
    report.variance = var;
    report.std_error = std::sqrt(var / n);
}

void count_violations(JlReport& report, bool with_wide_band) {
    const double n = static_cast<double>(report.samples.size());
    const double inv_m = 1.0 / static_cast<double>(report.config.count);
    for (BandRow& row : report.rows) {
        for (double s : report.samples) {
            if (s < row.lower || s > row.upper) ++row.violations;
            if (with_wide_band && (s < 1.0 - inv_m - row.eps || s > 1.0 + inv_m + row.eps)) ++row.wide_violations;
        }
        row.rate = static_cast<double>(row.violations) / n;
        row.wide_rate = static_cast<double>(row.wide_violations) / n;
        row.vacuous = row.delta >= 1.0;
    }
}

}  // namespace

double expected_gc_statistic(const ImageObject& diff, std::size_t columns, double q) {
    check_probability(q);
    const std::size_t h = diff.height();
    const std::size_t w = diff.width();
    if (columns < w) throw ValidationError("cytometry needs M >= W");
    const std::size_t len = columns + w - 1;
    // Column sums of D; feature m (0-based) covers object columns j with
    // 0 <= j + m − (W−1) < M.
    std::vector<double> col(w, 0.0);
    for (std::size_t i = 0; i < h; ++i)
        for (std::size_t j = 0; j < w; ++j) col[j] += diff(i, j);
    double partial_sq = 0.0;
    for (std::size_t m = 0; m < len; ++m) {
        double p = 0.0;
        for (std::size_t j = 0; j < w; ++j) {
            const std::size_t c = j + m;  // padded column index
            if (c >= w - 1 && c - (w - 1) < columns) p += col[j];
        }
        partial_sq += p * p;
    }
    const double mm = static_cast<double>(columns);
    return (mm * frobenius_norm_sq(diff) + (q / (1.0 - q)) * partial_sq) / static_cast<double>(len);
}

JlReport verify_jl_gi(const ImageObject& x, const ImageObject& y, const ExperimentConfig& config) {
    check_pair(x, y, config);
    const ImageObject diff = x - y;
    JlReport report;
    report.config = config;
    report.config.mode = FeatureMode::GhostImaging;
    report.fro_sq = frobenius_norm_sq(diff);
    report.sum = matrix_sum(diff);
    if (report.fro_sq == 0.0) throw DegeneratePairError("X and Y are identical; the distance band is undefined");

    const double m = static_cast<double>(config.count);
    const double scale = 1.0 / (m * config.q * (1.0 - config.q) * report.fro_sq);
    report.expected_mean = 1.0 - 1.0 / m;

    report.samples.assign(config.trials, 0.0);
    parallel_for(config.trials, [&](std::size_t t) {
        const MaskSet masks =
            generate_gi_masks(config.height, config.width, config.count, config.q, trial_seed(config.base_seed, t));
        const FeatureVector fx = gi_features(x, masks);
        const FeatureVector fy = gi_features(y, masks);
        report.samples[t] = squared_distance(fx.centered, fy.centered) * scale;
    });
    summarize(report);

    for (double eps : config.eps_grid) {
        BandRow row;
        row.eps = eps;
        row.delta = delta_gi(diff, config.q, config.count, eps);
        row.lower = 1.0 - 1.0 / m - eps;
        row.upper = 1.0 - 1.0 / m + eps;
        report.rows.push_back(row);
    }
    count_violations(report, true);
    return report;
}

JlReport verify_jl_gc(const ImageObject& x, const ImageObject& y, const ExperimentConfig& config) {
    check_pair(x, y, config);
    const ImageObject diff = x - y;
    JlReport report;
    report.config = config;
    report.config.mode = FeatureMode::Cytometry;
    report.fro_sq = frobenius_norm_sq(diff);
    report.sum = matrix_sum(diff);
    if (report.fro_sq == 0.0) throw DegeneratePairError("X and Y are identical; the distance band is undefined");

    const std::size_t len = config.count + config.width - 1;
    const double scale = 1.0 / (config.q * (1.0 - config.q) * static_cast<double>(len));
    report.expected_mean = expected_gc_statistic(diff, config.count, config.q);

    report.samples.assign(config.trials, 0.0);
    parallel_for(config.trials, [&](std::size_t t) {
        const CytometryMask mask =
            generate_gc_mask(config.height, config.count, config.q, trial_seed(config.base_seed, t));
        const FeatureVector fx = gc_features(x, mask);
        const FeatureVector fy = gc_features(y, mask);
        report.samples[t] = squared_distance(fx.raw, fy.raw) * scale;
    });
    summarize(report);

    const double correction = (config.q / (1.0 - config.q)) * report.sum * report.sum;
    for (double eps : config.eps_grid) {
        BandRow row;
        row.eps = eps;
        row.delta = delta_gc(diff, config.q, config.count, eps);
        row.lower = (1.0 - eps) * report.fro_sq - correction;
        row.upper = (1.0 + eps) * report.fro_sq + correction;
        report.rows.push_back(row);
    }
    count_violations(report, false);
    return report;
}

JlReport verify_jl(const ImageObject& x, const ImageObject& y, const ExperimentConfig& config) {
    return config.mode == FeatureMode::GhostImaging ? verify_jl_gi(x, y, config) : verify_jl_gc(x, y, config);
}

double rbf_kernel(double d_sq, double scale) {
    if (!(d_sq >= 0.0)) throw ValidationError("squared distance must be nonnegative");
    if (!(scale > 0.0)) throw ValidationError("kernel scale must be positive");
    return std::exp(-scale * d_sq);
}

double matched_beta(double gamma, double q, std::size_t count, FeatureMode mode, std::size_t width) {
    check_probability(q);
    if (!(gamma > 0.0)) throw ValidationError("gamma must be positive");
    if (mode == FeatureMode::GhostImaging) {
        if (count < 2) throw ValidationError("matched beta needs M >= 2 in ghost-imaging mode");
        return gamma / (static_cast<double>(count - 1) * q * (1.0 - q));
    }
    if (count == 0 || width == 0) throw ValidationError("M and W must be >= 1");
    return gamma / (q * (1.0 - q) * static_cast<double>(count + width - 1));
}

KernelGapReport kernel_gap_experiment(const std::vector<std::pair<ImageObject, ImageObject>>& pairs,
                                      const ExperimentConfig& config, const std::vector<std::size_t>& counts,
                                      std::size_t seeds) {
    if (pairs.empty()) throw ValidationError("kernel gap needs at least one object pair");
    if (seeds == 0) throw ValidationError("kernel gap needs at least one mask seed");
    check_probability(config.q);
    if (!(config.gamma > 0.0)) throw ValidationError("gamma must be positive");
    for (const auto& [a, b] : pairs) {
        if (a.height() != config.height || a.width() != config.width || !a.same_shape(b)) {
            throw ValidationError("objects do not match the configured H x W");
        }
    }

    std::vector<double> image_kernel(pairs.size());
    for (std::size_t p = 0; p < pairs.size(); ++p) {
        image_kernel[p] = rbf_kernel(frobenius_norm_sq(pairs[p].first - pairs[p].second), config.gamma);
    }

    KernelGapReport report;
    report.config = config;
    report.pairs = pairs.size();
    report.seeds = seeds;
    for (std::size_t count : counts) {
        KernelGapRow row;
        row.count = count;
        row.beta = matched_beta(config.gamma, config.q, count, config.mode, config.width);
        row.per_seed_median.assign(seeds, 0.0);
        parallel_for(seeds, [&](std::size_t s) {
            const std::uint64_t seed = rng::mix(rng::mix(config.base_seed, count), s);
            std::vector<double> gaps(pairs.size());
            if (config.mode == FeatureMode::GhostImaging) {
                const MaskSet masks = generate_gi_masks(config.height, config.width, count, config.q, seed);
                for (std::size_t p = 0; p < pairs.size(); ++p) {
                    const double d = squared_distance(gi_features(pairs[p].first, masks).centered,
                                                      gi_features(pairs[p].second, masks).centered);
                    gaps[p] = std::abs(image_kernel[p] - rbf_kernel(d, row.beta));
                }
            } else {
                const CytometryMask mask = generate_gc_mask(config.height, count, config.q, seed);
                for (std::size_t p = 0; p < pairs.size(); ++p) {
                    const double d =
                        squared_distance(gc_features(pairs[p].first, mask).raw, gc_features(pairs[p].second, mask).raw);
                    gaps[p] = std::abs(image_kernel[p] - rbf_kernel(d, row.beta));
                }
            }
            row.per_seed_median[s] = median(std::move(gaps));
        });
        row.median_gap = median(row.per_seed_median);
        report.rows.push_back(std::move(row));
    }
    return report;
}

KernelGapReport kernel_gap_experiment(const std::vector<ImageObject>& objects, const ExperimentConfig& config,
                                      const std::vector<std::size_t>& counts, std::size_t seeds) {
    if (objects.size() < 2) throw ValidationError("kernel gap needs at least two objects");
    std::vector<std::pair<ImageObject, ImageObject>> pairs;
    for (std::size_t a = 0; a < objects.size(); ++a)
        for (std::size_t b = a + 1; b < objects.size(); ++b) pairs.emplace_back(objects[a], objects[b]);
    return kernel_gap_experiment(pairs, config, counts, seeds);
}

std::vector<ImageObject> synth_cells(std::size_t n, CellClass cls, std::size_t height, std::size_t width,
                                     std::uint64_t seed, const CellJitter& jitter) {
    if (height == 0 || width == 0) throw ValidationError("cell image dimensions must be >= 1");
    if (!(jitter.radius > 0.0) || jitter.radius_jitter < 0.0 || jitter.intensity_jitter < 0.0 ||
        jitter.noise_sigma < 0.0) {
        throw ValidationError("cell radius must be positive and jitter amounts nonnegative");
    }
    if (!(jitter.inner_ratio > 0.0 && jitter.inner_ratio < 1.0)) throw ValidationError("inner_ratio must lie in (0, 1)");
    if (jitter.radius - jitter.radius_jitter <= 0.0 ||
        jitter.radius + jitter.radius_jitter > 0.5 * static_cast<double>(std::min(height, width))) {
        throw ValidationError("cell geometry does not fit inside the image");
    }
    const double ci = 0.5 * static_cast<double>(height);
    const double cj = 0.5 * static_cast<double>(width);
    std::vector<ImageObject> cells;
    cells.reserve(n);
    for (std::size_t k = 0; k < n; ++k) {
        rng::Xoshiro256ss gen(rng::mix(seed, k));
        const double radius = jitter.radius + jitter.radius_jitter * (2.0 * gen.uniform() - 1.0);
        const double level = jitter.intensity + jitter.intensity_jitter * (2.0 * gen.uniform() - 1.0);
        const double hole = cls == CellClass::Ring ? radius * jitter.inner_ratio : -1.0;
        ImageObject img(height, width);
        for (std::size_t i = 0; i < height; ++i) {
            for (std::size_t j = 0; j < width; ++j) {
                const double di = static_cast<double>(i) + 0.5 - ci;
                const double dj = static_cast<double>(j) + 0.5 - cj;
                const double r = std::sqrt(di * di + dj * dj);
                const bool inside = r <= radius && r > hole;
                const double v = (inside ? level : 0.0) + jitter.noise_sigma * gen.normal();
                img(i, j) = std::clamp(v, 0.0, 1.0);
            }
        }
        cells.push_back(std::move(img));
    }
    return cells;
}

double KernelSpec::operator()(std::span<const double> a, std::span<const double> b) const {
    if (kind == Kind::Rbf) return rbf_kernel(squared_distance(a, b), scale);
    if (a.size() != b.size()) throw ValidationError("vector length mismatch");
    double s = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k) s += a[k] * b[k];
    return s;
}

std::vector<int> kernel_knn_predict(const std::vector<LabeledSample>& train, const std::vector<LabeledSample>& test,
                                    const KernelSpec& kernel, std::size_t k) {
    if (train.empty() || test.empty()) throw ValidationError("k-NN needs nonempty train and test sets");
    if (k == 0 || k % 2 == 0) throw ValidationError("k must be odd and >= 1");
    const std::size_t kk = std::min(k, train.size());
    std::vector<double> self_train(train.size());
    for (std::size_t a = 0; a < train.size(); ++a) self_train[a] = kernel(train[a].features, train[a].features);

    std::vector<int> predictions(test.size());
    parallel_for(test.size(), [&](std::size_t t) {
        const auto& x = test[t].features;
        const double self = kernel(x, x);
        std::vector<std::pair<double, std::size_t>> dist(train.size());
        for (std::size_t a = 0; a < train.size(); ++a) {
            dist[a] = {self + self_train[a] - 2.0 * kernel(x, train[a].features), a};
        }
        std::partial_sort(dist.begin(), dist.begin() + static_cast<std::ptrdiff_t>(kk), dist.end());
        // Vote; among labels with the top count, the one seen first (nearest) wins.
        std::vector<std::pair<int, std::size_t>> votes;
        for (std::size_t r = 0; r < kk; ++r) {
            const int label = train[dist[r].second].label;
            auto it = std::find_if(votes.begin(), votes.end(), [&](const auto& v) { return v.first == label; });
            if (it == votes.end()) {
                votes.emplace_back(label, 1);
            } else {
                ++it->second;
            }
        }
        std::size_t best = 0;
        for (std::size_t v = 1; v < votes.size(); ++v) {
            if (votes[v].second > votes[best].second) best = v;
        }
        predictions[t] = votes[best].first;
    });
    return predictions;
}

double kernel_knn_classify(const std::vector<LabeledSample>& train, const std::vector<LabeledSample>& test,
                           const KernelSpec& kernel, std::size_t k) {
    const std::vector<int> predictions = kernel_knn_predict(train, test, kernel, k);
    std::size_t correct = 0;
    for (std::size_t t = 0; t < test.size(); ++t) correct += predictions[t] == test[t].label ? 1 : 0;
    return static_cast<double>(correct) / static_cast<double>(test.size());
}

namespace {

std::vector<ImageObject> balanced_corpus(std::size_t n, const ClassificationConfig& c, std::uint64_t seed,
                                         std::vector<int>& labels) {
    const std::size_t disks = n - n / 2;
    auto out = synth_cells(disks, CellClass::Disk, c.height, c.width, rng::mix(seed, 0), c.jitter);
    auto rings = synth_cells(n / 2, CellClass::Ring, c.height, c.width, rng::mix(seed, 1), c.jitter);
    labels.assign(disks, static_cast<int>(CellClass::Disk));
    labels.insert(labels.end(), rings.size(), static_cast<int>(CellClass::Ring));
    for (auto& r : rings) out.push_back(std::move(r));
    return out;
}

}  // namespace

ClassificationReport classification_demo(const ClassificationConfig& config) {
    check_probability(config.q);
    if (config.train == 0 || config.test == 0) throw ValidationError("train and test sizes must be >= 1");
    std::vector<int> train_labels, test_labels;
    const auto train_imgs = balanced_corpus(config.train, config, rng::mix(config.seed, 0), train_labels);
    const auto test_imgs = balanced_corpus(config.test, config, rng::mix(config.seed, 1), test_labels);
    const MaskSet masks = generate_gi_masks(config.height, config.width, config.count, config.q, rng::mix(config.seed, 2));

    auto to_samples = [&](const std::vector<ImageObject>& imgs, const std::vector<int>& labels, bool ghost) {
        std::vector<LabeledSample> out(imgs.size());
        for (std::size_t k = 0; k < imgs.size(); ++k) {
            out[k].label = labels[k];
            if (ghost) {
                out[k].features = gi_features(imgs[k], masks).centered;
            } else {
                out[k].features.assign(imgs[k].values().begin(), imgs[k].values().end());
            }
        }
        return out;
    };

    ClassificationReport report;
    report.config = config;
    report.gamma = 1.0 / static_cast<double>(config.height * config.width);
    report.beta = matched_beta(report.gamma, config.q, config.count, FeatureMode::GhostImaging, config.width);
    report.image_accuracy =
        kernel_knn_classify(to_samples(train_imgs, train_labels, false), to_samples(test_imgs, test_labels, false),
                            KernelSpec{KernelSpec::Kind::Rbf, report.gamma}, config.k);
    report.ghost_accuracy =
        kernel_knn_classify(to_samples(train_imgs, train_labels, true), to_samples(test_imgs, test_labels, true),
                            KernelSpec{KernelSpec::Kind::Rbf, report.beta}, config.k);
    return report;
}

double reconstruction_correlation(const ImageObject& truth, double q, std::size_t count, std::uint64_t seed) {
    const MaskSet masks = generate_gi_masks(truth.height(), truth.width(), count, q, seed);
    const ImageObject recon = rescale_reconstruction(reconstruct_image(gi_features(truth, masks), masks), q, count);
    return pearson_correlation(recon.values(), truth.values());
}

std::vector<ImageObject> random_images(std::size_t n, std::size_t height, std::size_t width, std::uint64_t seed) {
    std::vector<ImageObject> out;
    out.reserve(n);
    for (std::size_t k = 0; k < n; ++k) {
        rng::Xoshiro256ss gen(rng::mix(seed, k));
        ImageObject img(height, width);
        for (double& v : img.values()) v = gen.uniform();
        out.push_back(std::move(img));
    }
    return out;
}

}  // namespace ghostproj
