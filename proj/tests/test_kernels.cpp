#include <bit>
#include <cstdint>
#include <vector>

#include <gtest/gtest.h>

#include "ghostproj/features.hpp"
#include "ghostproj/kernels.hpp"
#include "ghostproj/masks.hpp"
#include "ghostproj/reconstruct.hpp"
#include "ghostproj/rng.hpp"
#include "test_support.hpp"

namespace ghostproj {
namespace {

using kernels::KernelTable;

std::vector<double> random_values(std::size_t n, std::uint64_t seed) {
    rng::Xoshiro256ss gen(seed);
    std::vector<double> v(n);
    for (double& e : v) e = gen.normal() * 10.0;
    return v;
}

std::vector<std::uint64_t> random_bits(std::size_t n, std::uint64_t seed) {
    rng::Xoshiro256ss gen(seed);
    std::vector<std::uint64_t> w((n + 63) / 64);
    for (auto& e : w) e = gen.next();
    if (n % 64) w.back() &= (std::uint64_t{1} << (n % 64)) - 1;
    return w;
}

// Straight sequential references, independent of the lane-blocked order.
double naive_masked_sum(const std::vector<std::uint64_t>& bits, const std::vector<double>& x) {
    double s = 0;
    for (std::size_t k = 0; k < x.size(); ++k)
        if ((bits[k / 64] >> (k % 64)) & 1) s += x[k];
    return s;
}

class KernelEquivalence : public ::testing::TestWithParam<const KernelTable*> {};

TEST_P(KernelEquivalence, MatchesScalarBitForBit) {
    const KernelTable& ref = kernels::scalar_table();
    const KernelTable& k = *GetParam();
    for (std::size_t n : {0u, 1u, 3u, 4u, 5u, 63u, 64u, 65u, 130u, 257u, 1000u}) {
        const auto x = random_values(n, 10 + n);
        const auto y = random_values(n, 20 + n);
        const auto bits = random_bits(n, 30 + n);

        EXPECT_EQ(std::bit_cast<std::uint64_t>(k.masked_sum(bits.data(), x.data(), n)),
                  std::bit_cast<std::uint64_t>(ref.masked_sum(bits.data(), x.data(), n)))
            << k.name << " n=" << n;
        EXPECT_EQ(std::bit_cast<std::uint64_t>(k.squared_distance(x.data(), y.data(), n)),
                  std::bit_cast<std::uint64_t>(ref.squared_distance(x.data(), y.data(), n)));

        auto a1 = y, a2 = y;
        k.axpy(1.7, x.data(), a1.data(), n);
        ref.axpy(1.7, x.data(), a2.data(), n);
        EXPECT_EQ(a1, a2);

        auto b1 = y, b2 = y;
        k.masked_add(bits.data(), -0.3, b1.data(), n);
        ref.masked_add(bits.data(), -0.3, b2.data(), n);
        EXPECT_EQ(b1, b2);
    }
}

TEST_P(KernelEquivalence, AgreesWithNaiveSumsToRounding) {
    const KernelTable& k = *GetParam();
    for (std::size_t n : {7u, 64u, 999u}) {
        const auto x = random_values(n, 40 + n);
        const auto bits = random_bits(n, 50 + n);
        EXPECT_NEAR(k.masked_sum(bits.data(), x.data(), n), naive_masked_sum(bits, x), 1e-10);
    }
}

TEST_P(KernelEquivalence, LibraryOutputsIdenticalUnderEachVariant) {
    const KernelTable* before = &kernels::active();
    const ImageObject x = testing::random_matrix(7, 9, 3);
    const MaskSet masks = generate_gi_masks(7, 9, 50, 0.2, 9);
    const CytometryMask strip = generate_gc_mask(7, 40, 0.2, 9);

    ASSERT_TRUE(kernels::select("scalar"));
    const FeatureVector gi_ref = gi_features(x, masks);
    const FeatureVector gc_ref = gc_features(x, strip);
    const ImageObject rec_ref = reconstruct_image(gi_ref, masks);

    ASSERT_TRUE(kernels::select(GetParam()->name));
    EXPECT_EQ(gi_features(x, masks).raw, gi_ref.raw);
    EXPECT_EQ(gc_features(x, strip).raw, gc_ref.raw);
    EXPECT_EQ(reconstruct_image(gi_ref, masks), rec_ref);

    kernels::select(before->name);
}

INSTANTIATE_TEST_SUITE_P(AllVariants, KernelEquivalence, ::testing::ValuesIn(kernels::available_tables()),
                         [](const auto& info) { return std::string(info.param->name); });

TEST(KernelDispatch, SelectRejectsUnknownName) {
    EXPECT_FALSE(kernels::select("sse9"));
    EXPECT_TRUE(kernels::select(kernels::active().name));
}

}  // namespace
}  // namespace ghostproj
