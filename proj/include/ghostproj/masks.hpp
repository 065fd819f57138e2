#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace ghostproj {

/// M independent H×W Bernoulli(q) illumination patterns, bit-packed.
///
/// Pattern m occupies words_per_plane() consecutive 64-bit words. Pixel (i, j)
/// of pattern m is bit (i*W + j) mod 64 of word (i*W + j) / 64 of that plane;
/// unused high bits of the last word are zero.
class MaskSet {
public:
    MaskSet(std::size_t count, std::size_t height, std::size_t width, double q, std::uint64_t seed,
            std::vector<std::uint64_t> bits);

    /// Packs explicit 0/1 patterns given as count planes of H*W row-major entries.
    static MaskSet from_planes(std::size_t height, std::size_t width,
                               const std::vector<std::vector<std::uint8_t>>& planes, double q = 0.5,
                               std::uint64_t seed = 0);

    std::size_t count() const noexcept { return count_; }
    std::size_t height() const noexcept { return height_; }
    std::size_t width() const noexcept { return width_; }
    std::size_t pixels() const noexcept { return height_ * width_; }
    double q() const noexcept { return q_; }
    std::uint64_t seed() const noexcept { return seed_; }
    std::size_t words_per_plane() const noexcept { return words_per_plane_; }

    bool bit(std::size_t m, std::size_t i, std::size_t j) const noexcept {
        const std::size_t p = i * width_ + j;
        return (plane(m)[p >> 6] >> (p & 63)) & 1U;
    }

    std::span<const std::uint64_t> plane(std::size_t m) const noexcept {
        return std::span<const std::uint64_t>(bits_).subspan(m * words_per_plane_, words_per_plane_);
    }

    std::span<const std::uint64_t> words() const noexcept { return bits_; }

    /// Row i of pattern m as 0/1 bytes.
    std::vector<std::uint8_t> unpack_row(std::size_t m, std::size_t i) const;

    std::size_t ones(std::size_t m) const noexcept;
    std::size_t total_ones() const noexcept;
    double density() const noexcept;

    bool operator==(const MaskSet&) const = default;

private:
    std::size_t count_;
    std::size_t height_;
    std::size_t width_;
    double q_;
    std::uint64_t seed_;
    std::size_t words_per_plane_;
    std::vector<std::uint64_t> bits_;
};

/// One H×M Bernoulli(q) strip the object slides across, bit-packed row by row.
///
/// Column c (0-based) of row i is bit c mod 64 of word i*words_per_row() + c/64.
class CytometryMask {
public:
    CytometryMask(std::size_t height, std::size_t columns, double q, std::uint64_t seed,
                  std::vector<std::uint64_t> bits);

    /// Packs explicit 0/1 rows (height rows of equal length).
    static CytometryMask from_rows(const std::vector<std::vector<std::uint8_t>>& rows, double q = 0.5,
                                   std::uint64_t seed = 0);

    std::size_t height() const noexcept { return height_; }
    std::size_t columns() const noexcept { return columns_; }
    double q() const noexcept { return q_; }
    std::uint64_t seed() const noexcept { return seed_; }
    std::size_t words_per_row() const noexcept { return words_per_row_; }

    /// 0-based access; c must be < columns().
    bool at(std::size_t i, std::size_t c) const noexcept {
        return (bits_[i * words_per_row_ + (c >> 6)] >> (c & 63)) & 1U;
    }

    /// 1-based column read with zero padding: columns outside [1, M] read as 0.
    int read(std::size_t i, std::int64_t column) const noexcept {
        if (column < 1 || column > static_cast<std::int64_t>(columns_)) return 0;
        return at(i, static_cast<std::size_t>(column - 1)) ? 1 : 0;
    }

    std::span<const std::uint64_t> words() const noexcept { return bits_; }

    std::vector<std::uint8_t> unpack_row(std::size_t i) const;

    /// Row i as doubles with `pad` zero columns on each side.
    std::vector<double> padded_row(std::size_t i, std::size_t pad) const;

    std::size_t total_ones() const noexcept;
    double density() const noexcept;

    bool operator==(const CytometryMask&) const = default;

private:
    std::size_t height_;
    std::size_t columns_;
    double q_;
    std::uint64_t seed_;
    std::size_t words_per_row_;
    std::vector<std::uint64_t> bits_;
};

/// Throws ValidationError unless 0 < q < 1.
void check_probability(double q);

/// Pattern m is drawn from Xoshiro256ss(rng::mix(seed, m)), one Bernoulli(q)
/// draw per pixel in row-major order.
MaskSet generate_gi_masks(std::size_t height, std::size_t width, std::size_t count, double q,
                          std::uint64_t seed);

/// Row i is drawn from Xoshiro256ss(rng::mix(seed, i)), one draw per column
/// left to right.
CytometryMask generate_gc_mask(std::size_t height, std::size_t columns, double q, std::uint64_t seed);

}  // namespace ghostproj
