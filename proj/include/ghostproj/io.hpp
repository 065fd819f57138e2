#pragma once

// On-disk formats. All integers and floats are little-endian; floats are
// IEEE-754 binary64.
//
//   GFM1 matrix:   "GFM1" | H u64 | W u64 | H*W f64 row-major
//   GFB1 masks:    "GFB1" | mode u8 (0 = gi, 1 = gc) | M u64 | H u64 | W u64 |
//                  q f64 | seed u64 | packed rows
//                  gi: for each pattern, for each row, ceil(W/8) bytes
//                  gc: W is written as 1; for each row, ceil(M/8) bytes
//                  bit c of a row is bit (c mod 8) of byte c/8; pad bits are 0
//   GFV1 features: "GFV1" | mode u8 | length u64 | length f64
//
// CSV matrices hold one image row per line, comma separated; CSV feature
// vectors hold one value per line. Numbers use the shortest round-trip
// decimal form with '.' regardless of locale.

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "ghostproj/core.hpp"
#include "ghostproj/masks.hpp"

namespace ghostproj::io {

using Bytes = std::vector<std::uint8_t>;
using AnyMask = std::variant<MaskSet, CytometryMask>;

Bytes encode_matrix(const ImageObject& x);
ImageObject decode_matrix(std::span<const std::uint8_t> bytes);

std::string matrix_to_csv(const ImageObject& x);
ImageObject matrix_from_csv(const std::string& text);

Bytes encode_masks(const MaskSet& masks);
Bytes encode_masks(const CytometryMask& mask);
AnyMask decode_masks(std::span<const std::uint8_t> bytes);

Bytes encode_features(FeatureMode mode, std::span<const double> values);
std::pair<FeatureMode, std::vector<double>> decode_features(std::span<const std::uint8_t> bytes);

std::string features_to_csv(std::span<const double> values);
std::vector<double> features_from_csv(const std::string& text);

std::string format_double(double v);

/// Writes to a sibling temporary file and renames it over `path`, so readers
/// never observe a partially written file. Throws IoError.
void write_atomic(const std::filesystem::path& path, std::span<const std::uint8_t> bytes);
void write_atomic(const std::filesystem::path& path, const std::string& text);

Bytes read_file(const std::filesystem::path& path);

/// GFM1 when the file starts with the magic, CSV otherwise.
ImageObject read_matrix(const std::filesystem::path& path);
void write_matrix(const std::filesystem::path& path, const ImageObject& x);  // .csv → CSV, else GFM1

AnyMask read_masks(const std::filesystem::path& path);

std::pair<FeatureMode, std::vector<double>> read_features(const std::filesystem::path& path);
void write_features(const std::filesystem::path& path, FeatureMode mode, std::span<const double> values);

}  // namespace ghostproj::io
