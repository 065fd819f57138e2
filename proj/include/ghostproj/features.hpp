#pragma once

#include <span>
#include <utility>
#include <vector>

#include "ghostproj/core.hpp"
#include "ghostproj/masks.hpp"

namespace ghostproj {

/// Mean ⟨G⟩ of a nonempty series and the centered copy G − ⟨G⟩.
std::pair<double, std::vector<double>> center_features(std::span<const double> raw);

/// Single-pixel intensities G_m(X) = Σ_{i,j} B_m(i,j) X(i,j), one per pattern.
FeatureVector gi_features(const ImageObject& x, const MaskSet& masks);

/// Time series recorded while X slides across the strip:
/// G_m(X) = Σ_i Σ_j B(i, j + m − W) X(i, j), m = 1 … M+W−1 (1-based, B zero
/// outside columns 1 … M). Requires equal heights and M >= W.
FeatureVector gc_features(const ImageObject& x, const CytometryMask& mask);

}  // namespace ghostproj
