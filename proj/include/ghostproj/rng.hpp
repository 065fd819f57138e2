#pragma once

#include <cstdint>

namespace ghostproj::rng {

// Random streams used by every stochastic path in the library.
//
//   mix(seed, index)  = splitmix64_finalize(seed + (index + 1) * 0x9E3779B97F4A7C15)
//   Xoshiro256ss(s)   = xoshiro256** whose four state words are the first four
//                       outputs of a SplitMix64 sequence started at s
//   bernoulli(q)      = ((next() >> 11) * 2^-53) < q
//
// All three are defined on exact 64-bit integer arithmetic, so a given
// (seed, index) reproduces the same bits on every platform.

constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;

constexpr std::uint64_t splitmix64_finalize(std::uint64_t z) noexcept {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

/// Derives an independent substream seed from a parent seed and an index.
constexpr std::uint64_t mix(std::uint64_t seed, std::uint64_t index) noexcept {
    return splitmix64_finalize(seed + (index + 1) * kGolden);
}

/// Smallest integer t with (u < t) == (u * 2^-53 < q) for every 53-bit u.
/// Requires 0 <= q <= 1.
constexpr std::uint64_t bernoulli_threshold(double q) noexcept {
    const double scaled = q * 0x1.0p53;  // exact: power-of-two scaling
    const auto floor_part = static_cast<std::uint64_t>(scaled);
    return static_cast<double>(floor_part) == scaled ? floor_part : floor_part + 1;
}

class SplitMix64 {
public:
    constexpr explicit SplitMix64(std::uint64_t state) noexcept : state_(state) {}
    constexpr std::uint64_t next() noexcept {
        state_ += kGolden;
        return splitmix64_finalize(state_);
    }

private:
    std::uint64_t state_;
};

/// xoshiro256** 1.0 (Blackman & Vigna).
class Xoshiro256ss {
public:
    using result_type = std::uint64_t;

    constexpr explicit Xoshiro256ss(std::uint64_t seed) noexcept {
        SplitMix64 sm(seed);
        for (auto& w : s_) w = sm.next();
    }

    static constexpr result_type min() noexcept { return 0; }
    static constexpr result_type max() noexcept { return ~result_type{0}; }

    constexpr result_type operator()() noexcept { return next(); }

    constexpr std::uint64_t next() noexcept {
        const std::uint64_t result = rotl(s_[1] * 5, 7) * 9;
        const std::uint64_t t = s_[1] << 17;
        s_[2] ^= s_[0];
        s_[3] ^= s_[1];
        s_[1] ^= s_[2];
        s_[0] ^= s_[3];
        s_[2] ^= t;
        s_[3] = rotl(s_[3], 45);
        return result;
    }

    /// Uniform double in [0, 1) with 53 random bits.
    constexpr double uniform() noexcept { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    constexpr bool bernoulli(double q) noexcept { return uniform() < q; }

    /// Same draw as bernoulli(q) given t = bernoulli_threshold(q), without the
    /// integer-to-double conversion.
    constexpr bool below(std::uint64_t threshold) noexcept { return (next() >> 11) < threshold; }

    /// Standard normal via Box-Muller (one value per call, second discarded).
    double normal() noexcept;

private:
    static constexpr std::uint64_t rotl(std::uint64_t x, int k) noexcept {
        return (x << k) | (x >> (64 - k));
    }

    std::uint64_t s_[4]{};
};

}  // namespace ghostproj::rng
