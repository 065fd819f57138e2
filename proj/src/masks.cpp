#include "ghostproj/masks.hpp"

#include <bit>
#include <cmath>
#include <string>

#include "ghostproj/core.hpp"
#include "ghostproj/rng.hpp"

namespace ghostproj {

namespace {

constexpr std::size_t words_for(std::size_t nbits) { return (nbits + 63) / 64; }

std::size_t popcount_all(std::span<const std::uint64_t> words) {
    std::size_t n = 0;
    for (std::uint64_t w : words) n += static_cast<std::size_t>(std::popcount(w));
    return n;
}

void check_dims(std::size_t a, std::size_t b, std::size_t c) {
    if (a == 0 || b == 0 || c == 0) throw ValidationError("mask dimensions must be >= 1");
}

}  // namespace

void check_probability(double q) {
    if (!(q > 0.0 && q < 1.0)) {
        throw ValidationError("q must lie strictly between 0 and 1 (got " + std::to_string(q) + ")");
    }
}

MaskSet::MaskSet(std::size_t count, std::size_t height, std::size_t width, double q,
                 std::uint64_t seed, std::vector<std::uint64_t> bits)
    : count_(count),
      height_(height),
      width_(width),
      q_(q),
      seed_(seed),
      words_per_plane_(words_for(height * width)),
      bits_(std::move(bits)) {
    check_dims(count, height, width);
    check_probability(q);
    if (bits_.size() != count_ * words_per_plane_) throw ValidationError("mask bit buffer has wrong length");
    const std::size_t tail = pixels() & 63;
    if (tail != 0) {
        const std::uint64_t unused = ~std::uint64_t{0} << tail;
        for (std::size_t m = 0; m < count_; ++m) {
            if (bits_[m * words_per_plane_ + words_per_plane_ - 1] & unused) {
                throw ValidationError("mask plane has bits set beyond the pixel count");
            }
        }
    }
}

MaskSet MaskSet::from_planes(std::size_t height, std::size_t width,
                             const std::vector<std::vector<std::uint8_t>>& planes, double q,
                             std::uint64_t seed) {
    const std::size_t n = height * width;
    const std::size_t wpp = words_for(n);
    std::vector<std::uint64_t> bits(planes.size() * wpp, 0);
    for (std::size_t m = 0; m < planes.size(); ++m) {
        if (planes[m].size() != n) throw ValidationError("mask plane size does not match H*W");
        for (std::size_t p = 0; p < n; ++p) {
            if (planes[m][p] > 1) throw ValidationError("mask entries must be 0 or 1");
            if (planes[m][p]) bits[m * wpp + (p >> 6)] |= std::uint64_t{1} << (p & 63);
        }
    }
    return MaskSet(planes.size(), height, width, q, seed, std::move(bits));
}

std::vector<std::uint8_t> MaskSet::unpack_row(std::size_t m, std::size_t i) const {
    std::vector<std::uint8_t> row(width_);
    for (std::size_t j = 0; j < width_; ++j) row[j] = bit(m, i, j) ? 1 : 0;
    return row;
}

std::size_t MaskSet::ones(std::size_t m) const noexcept { return popcount_all(plane(m)); }

std::size_t MaskSet::total_ones() const noexcept { return popcount_all(bits_); }

double MaskSet::density() const noexcept {
    return static_cast<double>(total_ones()) / static_cast<double>(count_ * pixels());
}

CytometryMask::CytometryMask(std::size_t height, std::size_t columns, double q, std::uint64_t seed,
                             std::vector<std::uint64_t> bits)
    : height_(height),
      columns_(columns),
      q_(q),
      seed_(seed),
      words_per_row_(words_for(columns)),
      bits_(std::move(bits)) {
    check_dims(height, columns, 1);
    check_probability(q);
    if (bits_.size() != height_ * words_per_row_) throw ValidationError("mask bit buffer has wrong length");
    const std::size_t tail = columns_ & 63;
    if (tail != 0) {
        const std::uint64_t unused = ~std::uint64_t{0} << tail;
        for (std::size_t i = 0; i < height_; ++i) {
            if (bits_[i * words_per_row_ + words_per_row_ - 1] & unused) {
                throw ValidationError("mask row has bits set beyond the column count");
            }
        }
    }
}

CytometryMask CytometryMask::from_rows(const std::vector<std::vector<std::uint8_t>>& rows, double q,
                                       std::uint64_t seed) {
    if (rows.empty() || rows.front().empty()) throw ValidationError("mask must not be empty");
    const std::size_t cols = rows.front().size();
    const std::size_t wpr = words_for(cols);
    std::vector<std::uint64_t> bits(rows.size() * wpr, 0);
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].size() != cols) throw ValidationError("ragged mask rows");
        for (std::size_t c = 0; c < cols; ++c) {
            if (rows[i][c] > 1) throw ValidationError("mask entries must be 0 or 1");
            if (rows[i][c]) bits[i * wpr + (c >> 6)] |= std::uint64_t{1} << (c & 63);
        }
    }
    return CytometryMask(rows.size(), cols, q, seed, std::move(bits));
}

std::vector<std::uint8_t> CytometryMask::unpack_row(std::size_t i) const {
    std::vector<std::uint8_t> row(columns_);
    for (std::size_t c = 0; c < columns_; ++c) row[c] = at(i, c) ? 1 : 0;
    return row;
}

std::vector<double> CytometryMask::padded_row(std::size_t i, std::size_t pad) const {
    std::vector<double> row(columns_ + 2 * pad, 0.0);
    for (std::size_t c = 0; c < columns_; ++c) row[pad + c] = at(i, c) ? 1.0 : 0.0;
    return row;
}

std::size_t CytometryMask::total_ones() const noexcept { return popcount_all(bits_); }

double CytometryMask::density() const noexcept {
    return static_cast<double>(total_ones()) / static_cast<double>(height_ * columns_);
}

MaskSet generate_gi_masks(std::size_t height, std::size_t width, std::size_t count, double q,
                          std::uint64_t seed) {
    check_dims(height, width, count);
    check_probability(q);
    const std::size_t n = height * width;
    const std::size_t wpp = words_for(n);
    const std::uint64_t threshold = rng::bernoulli_threshold(q);
    std::vector<std::uint64_t> bits(count * wpp, 0);
    for (std::size_t m = 0; m < count; ++m) {
        rng::Xoshiro256ss gen(rng::mix(seed, m));
        std::uint64_t* plane = bits.data() + m * wpp;
        for (std::size_t p = 0; p < n; ++p) {
            if (gen.below(threshold)) plane[p >> 6] |= std::uint64_t{1} << (p & 63);
        }
    }
    return MaskSet(count, height, width, q, seed, std::move(bits));
}

CytometryMask generate_gc_mask(std::size_t height, std::size_t columns, double q, std::uint64_t seed) {
    check_dims(height, columns, 1);
    check_probability(q);
    const std::size_t wpr = words_for(columns);
    const std::uint64_t threshold = rng::bernoulli_threshold(q);
    std::vector<std::uint64_t> bits(height * wpr, 0);
    for (std::size_t i = 0; i < height; ++i) {
        rng::Xoshiro256ss gen(rng::mix(seed, i));
        std::uint64_t* row = bits.data() + i * wpr;
        for (std::size_t c = 0; c < columns; ++c) {
            if (gen.below(threshold)) row[c >> 6] |= std::uint64_t{1} << (c & 63);
        }
    }
    return CytometryMask(height, columns, q, seed, std::move(bits));
}

}  // namespace ghostproj
