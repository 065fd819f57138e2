#include "ghostproj/features.hpp"

#include "ghostproj/kernels.hpp"

namespace ghostproj {

namespace {

FeatureVector finish(std::vector<double> raw, FeatureMode mode) {
    FeatureVector fv;
    auto [mean, centered] = center_features(raw);
    fv.raw = std::move(raw);
    fv.mean = mean;
    fv.centered = std::move(centered);
    fv.mode = mode;
    return fv;
}

}  // namespace

std::pair<double, std::vector<double>> center_features(std::span<const double> raw) {
    if (raw.empty()) throw ValidationError("cannot center an empty feature vector");
    double sum = 0.0;
    for (double v : raw) sum += v;
    const double mean = sum / static_cast<double>(raw.size());
    std::vector<double> centered(raw.size());
    for (std::size_t k = 0; k < raw.size(); ++k) centered[k] = raw[k] - mean;
    return {mean, std::move(centered)};
}

FeatureVector gi_features(const ImageObject& x, const MaskSet& masks) {
    if (x.height() != masks.height() || x.width() != masks.width()) {
        throw ValidationError("image is " + std::to_string(x.height()) + "x" + std::to_string(x.width()) +
                              " but masks are " + std::to_string(masks.height()) + "x" +
                              std::to_string(masks.width()));
    }
    const auto& k = kernels::active();
    std::vector<double> raw(masks.count());
    const double* px = x.values().data();
    for (std::size_t m = 0; m < masks.count(); ++m) {
        raw[m] = k.masked_sum(masks.plane(m).data(), px, masks.pixels());
    }
    return finish(std::move(raw), FeatureMode::GhostImaging);
}

FeatureVector gc_features(const ImageObject& x, const CytometryMask& mask) {
    if (x.height() != mask.height()) {
        throw ValidationError("image height " + std::to_string(x.height()) + " does not match mask height " +
                              std::to_string(mask.height()));
    }
    if (mask.columns() < x.width()) {
        throw ValidationError("mask width " + std::to_string(mask.columns()) +
                              " is narrower than the object width " + std::to_string(x.width()));
    }
    const std::size_t w = x.width();
    const std::size_t len = mask.columns() + w - 1;
    const auto& k = kernels::active();
    std::vector<double> raw(len, 0.0);
    // With W-1 zero columns on each side, feature m (0-based) reads padded
    // column j + m for object column j.
    for (std::size_t i = 0; i < x.height(); ++i) {
        const std::vector<double> padded = mask.padded_row(i, w - 1);
        const auto row = x.row(i);
        for (std::size_t j = 0; j < w; ++j) k.axpy(row[j], padded.data() + j, raw.data(), len);
    }
    return finish(std::move(raw), FeatureMode::Cytometry);
}

}  // namespace ghostproj
