#include <atomic>
#include <cstdlib>
#include <string>

#include "ghostproj/kernels.hpp"

namespace ghostproj::kernels {

namespace {

constexpr KernelTable kScalar{
    "scalar",
    detail::masked_sum_scalar,
    detail::masked_add_scalar,
    detail::axpy_scalar,
    detail::squared_distance_scalar,
};

#if defined(GHOSTPROJ_HAVE_AVX2)
constexpr KernelTable kAvx2{
    "avx2",
    detail::masked_sum_avx2,
    detail::masked_add_avx2,
    detail::axpy_avx2,
    detail::squared_distance_avx2,
};
#endif

const KernelTable* pick_default() noexcept {
    const char* env = std::getenv("GHOSTPROJ_SIMD");
    const std::string_view want = env ? env : "";
    if (want == "scalar") return &kScalar;
    if (const KernelTable* t = avx2_table()) return t;
    return &kScalar;
}

std::atomic<const KernelTable*>& slot() noexcept {
    static std::atomic<const KernelTable*> current{pick_default()};
    return current;
}

}  // namespace

const KernelTable& scalar_table() noexcept { return kScalar; }

const KernelTable* avx2_table() noexcept {
#if defined(GHOSTPROJ_HAVE_AVX2)
    static const bool supported = __builtin_cpu_supports("avx2");
    return supported ? &kAvx2 : nullptr;
#else
    return nullptr;
#endif
}

std::vector<const KernelTable*> available_tables() {
    std::vector<const KernelTable*> out{&kScalar};
    if (const KernelTable* t = avx2_table()) out.push_back(t);
    return out;
}

const KernelTable& active() noexcept { return *slot().load(std::memory_order_acquire); }

bool select(std::string_view name) noexcept {
    for (const KernelTable* t : available_tables()) {
        if (t->name == name) {
            slot().store(t, std::memory_order_release);
            return true;
        }
    }
    return false;
}

}  // namespace ghostproj::kernels
