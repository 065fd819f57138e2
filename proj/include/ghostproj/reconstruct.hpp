#pragma once

#include "ghostproj/core.hpp"
#include "ghostproj/masks.hpp"

namespace ghostproj {

/// Correlation image X̃(i,j) = (1/M) Σ_m (G_m − ⟨G⟩) B_m(i,j).
///
/// Output is not clamped; its expectation is (1 − 1/M) q(1−q) X(i,j).
ImageObject reconstruct_image(const FeatureVector& fv, const MaskSet& masks);

/// X̃ / ((1 − 1/M) q (1−q)): the unbiased estimate of X. Requires M >= 2.
ImageObject rescale_reconstruction(const ImageObject& reconstruction, double q, std::size_t count);

}  // namespace ghostproj
