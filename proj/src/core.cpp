#include "ghostproj/core.hpp"

#include <cmath>

#include "ghostproj/kernels.hpp"

namespace ghostproj {

namespace {

void check_finite(std::span<const double> values) {
    for (double v : values) {
        if (!std::isfinite(v)) throw ValidationError("image contains a non-finite value");
    }
}

}  // namespace

ImageObject::ImageObject(std::size_t height, std::size_t width)
    : height_(height), width_(width) {
    if (height == 0 || width == 0) throw ValidationError("image dimensions must be >= 1");
    data_.assign(height * width, 0.0);
}

ImageObject::ImageObject(std::size_t height, std::size_t width, std::vector<double> data)
    : height_(height), width_(width), data_(std::move(data)) {
    if (height == 0 || width == 0) throw ValidationError("image dimensions must be >= 1");
    if (data_.size() != height * width) {
        throw ValidationError("image data length " + std::to_string(data_.size()) +
                              " does not match " + std::to_string(height) + "x" +
                              std::to_string(width));
    }
    check_finite(data_);
}

ImageObject ImageObject::from_rows(const std::vector<std::vector<double>>& rows) {
    if (rows.empty() || rows.front().empty()) throw ValidationError("image must not be empty");
    const std::size_t w = rows.front().size();
    std::vector<double> data;
    data.reserve(rows.size() * w);
    for (const auto& r : rows) {
        if (r.size() != w) throw ValidationError("ragged rows in image");
        data.insert(data.end(), r.begin(), r.end());
    }
    return ImageObject(rows.size(), w, std::move(data));
}

ImageObject& ImageObject::operator-=(const ImageObject& rhs) {
    if (!same_shape(rhs)) throw ValidationError("image shape mismatch in subtraction");
    for (std::size_t k = 0; k < data_.size(); ++k) data_[k] -= rhs.data_[k];
    return *this;
}

ImageObject& ImageObject::operator+=(const ImageObject& rhs) {
    if (!same_shape(rhs)) throw ValidationError("image shape mismatch in addition");
    for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += rhs.data_[k];
    return *this;
}

ImageObject& ImageObject::operator*=(double s) noexcept {
    for (double& v : data_) v *= s;
    return *this;
}

std::string to_string(FeatureMode mode) {
    return mode == FeatureMode::GhostImaging ? "gi" : "gc";
}

FeatureMode parse_mode(const std::string& text) {
    if (text == "gi" || text == "ghost-imaging") return FeatureMode::GhostImaging;
    if (text == "gc" || text == "cytometry") return FeatureMode::Cytometry;
    throw ValidationError("unknown mode '" + text + "' (expected gi or gc)");
}

double frobenius_norm_sq(const ImageObject& x) noexcept {
    return l2_norm_sq(x.values());
}

double matrix_sum(const ImageObject& x) noexcept {
    double s = 0.0;
    for (double v : x.values()) s += v;
    return s;
}

double l2_norm_sq(std::span<const double> v) noexcept {
    double s = 0.0;
    for (double e : v) s += e * e;
    return s;
}

double squared_distance(std::span<const double> a, std::span<const double> b) {
    if (a.size() != b.size()) throw ValidationError("vector length mismatch");
    return kernels::active().squared_distance(a.data(), b.data(), a.size());
}

double pearson_correlation(std::span<const double> a, std::span<const double> b) {
    if (a.size() != b.size() || a.empty()) throw ValidationError("correlation needs equal nonempty samples");
    const double n = static_cast<double>(a.size());
    double ma = 0.0, mb = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k) {
        ma += a[k];
        mb += b[k];
    }
    ma /= n;
    mb /= n;
    double sab = 0.0, saa = 0.0, sbb = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k) {
        const double da = a[k] - ma;
        const double db = b[k] - mb;
        sab += da * db;
        saa += da * da;
        sbb += db * db;
    }
    if (saa == 0.0 || sbb == 0.0) return 0.0;
    return sab / std::sqrt(saa * sbb);
}

}  // namespace ghostproj
