#include "ghostproj/parallel.hpp"

#include <charconv>
#include <cstdlib>
#include <string_view>

namespace ghostproj {

std::size_t worker_count() {
    std::size_t cap = 0;
    if (const char* env = std::getenv("GHOSTPROJ_THREADS")) {
        const std::string_view text(env);
        std::from_chars(text.data(), text.data() + text.size(), cap);
    }
    if (cap == 0) cap = std::max<std::size_t>(1, std::thread::hardware_concurrency());
    return cap;
}

}  // namespace ghostproj
