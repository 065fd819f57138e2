#include "ghostproj/reconstruct.hpp"

#include "ghostproj/kernels.hpp"

namespace ghostproj {

ImageObject reconstruct_image(const FeatureVector& fv, const MaskSet& masks) {
    if (fv.mode != FeatureMode::GhostImaging) throw ValidationError("reconstruction needs ghost-imaging features");
    if (fv.centered.size() != masks.count()) {
        throw ValidationError("feature length " + std::to_string(fv.centered.size()) + " does not match " +
                              std::to_string(masks.count()) + " masks");
    }
    const auto& k = kernels::active();
    std::vector<double> acc(masks.pixels(), 0.0);
    for (std::size_t m = 0; m < masks.count(); ++m) {
        k.masked_add(masks.plane(m).data(), fv.centered[m], acc.data(), acc.size());
    }
    const double inv_m = 1.0 / static_cast<double>(masks.count());
    for (double& v : acc) v *= inv_m;
    return ImageObject(masks.height(), masks.width(), std::move(acc));
}

ImageObject rescale_reconstruction(const ImageObject& reconstruction, double q, std::size_t count) {
    check_probability(q);
    if (count < 2) throw ValidationError("rescaling needs at least 2 patterns (M = 1 gives a zero divisor)");
    const double divisor = (1.0 - 1.0 / static_cast<double>(count)) * q * (1.0 - q);
    ImageObject out = reconstruction;
    for (double& v : out.values()) v /= divisor;
    return out;
}

}  // namespace ghostproj
