#pragma once

#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace ghostproj {

/// Raised for out-of-range parameters and shape mismatches (CLI exit code 2).
class ValidationError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Raised when a distance bound is requested for an identical pair (‖X−Y‖ = 0).
class DegeneratePairError : public ValidationError {
public:
    using ValidationError::ValidationError;
};

/// Raised for unreadable/unwritable files and malformed on-disk data (CLI exit code 1).
class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Dense H×W image of 64-bit reals stored row-major.
///
/// Indices are 0-based: element (i, j) corresponds to pixel (i+1, j+1) in the
/// usual 1-based matrix notation. Empty and non-finite images are rejected at
/// construction, so every ImageObject in circulation has H, W >= 1.
class ImageObject {
public:
    ImageObject(std::size_t height, std::size_t width);
    ImageObject(std::size_t height, std::size_t width, std::vector<double> data);

    /// Builds from nested rows; all rows must have the same length.
    static ImageObject from_rows(const std::vector<std::vector<double>>& rows);

    std::size_t height() const noexcept { return height_; }
    std::size_t width() const noexcept { return width_; }
    std::size_t size() const noexcept { return data_.size(); }

    double operator()(std::size_t i, std::size_t j) const noexcept { return data_[i * width_ + j]; }
    double& operator()(std::size_t i, std::size_t j) noexcept { return data_[i * width_ + j]; }

    std::span<const double> values() const noexcept { return data_; }
    std::span<double> values() noexcept { return data_; }
    std::span<const double> row(std::size_t i) const noexcept {
        return std::span<const double>(data_).subspan(i * width_, width_);
    }

    bool same_shape(const ImageObject& other) const noexcept {
        return height_ == other.height_ && width_ == other.width_;
    }

    ImageObject& operator-=(const ImageObject& rhs);
    ImageObject& operator+=(const ImageObject& rhs);
    ImageObject& operator*=(double s) noexcept;

    friend ImageObject operator-(ImageObject lhs, const ImageObject& rhs) { return lhs -= rhs; }
    friend ImageObject operator+(ImageObject lhs, const ImageObject& rhs) { return lhs += rhs; }
    friend ImageObject operator*(ImageObject lhs, double s) { return lhs *= s; }

    bool operator==(const ImageObject&) const = default;

private:
    std::size_t height_;
    std::size_t width_;
    std::vector<double> data_;
};

enum class FeatureMode : unsigned char { GhostImaging = 0, Cytometry = 1 };

std::string to_string(FeatureMode mode);
FeatureMode parse_mode(const std::string& text);

/// Raw detector intensities G_m together with their mean ⟨G⟩ and the
/// centered series g_m = G_m − ⟨G⟩.
struct FeatureVector {
    std::vector<double> raw;
    double mean = 0.0;
    std::vector<double> centered;
    FeatureMode mode = FeatureMode::GhostImaging;

    std::size_t size() const noexcept { return raw.size(); }
};

/// Σ X(i,j)².
double frobenius_norm_sq(const ImageObject& x) noexcept;

/// Σ X(i,j).
double matrix_sum(const ImageObject& x) noexcept;

double l2_norm_sq(std::span<const double> v) noexcept;

/// Σ (a_k − b_k)²; lengths must match.
double squared_distance(std::span<const double> a, std::span<const double> b);

/// Pearson correlation of two equally sized samples. Returns 0 when either
/// sample has zero variance.
double pearson_correlation(std::span<const double> a, std::span<const double> b);

}  // namespace ghostproj
