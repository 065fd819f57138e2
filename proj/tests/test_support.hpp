#pragma once

#include <cmath>
#include <cstdint>
#include <vector>

#include <gtest/gtest.h>

#include "ghostproj/core.hpp"
#include "ghostproj/rng.hpp"

namespace ghostproj::testing {

/// H×W matrix with entries uniform in [lo, hi).
inline ImageObject random_matrix(std::size_t h, std::size_t w, std::uint64_t seed, double lo = -1.0,
                                 double hi = 1.0) {
    rng::Xoshiro256ss gen(seed);
    ImageObject x(h, w);
    for (double& v : x.values()) v = lo + (hi - lo) * gen.uniform();
    return x;
}

inline ::testing::AssertionResult rel_close(double actual, double expected, double rel) {
    const double scale = std::max(std::abs(expected), 1e-300);
    if (std::abs(actual - expected) <= rel * scale) return ::testing::AssertionSuccess();
    return ::testing::AssertionFailure() << "actual " << actual << " expected " << expected << " rel err "
                                         << std::abs(actual - expected) / scale << " > " << rel;
}

}  // namespace ghostproj::testing
