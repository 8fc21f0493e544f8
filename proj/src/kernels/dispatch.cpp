#include "kacfta/kernels/kernels.hpp"

#include <cstdlib>
#include <cstring>

namespace kacfta::kernels {

#if defined(KACFTA_AVX2_BACKEND)
const Backend& avx2_backend();
#endif
#if defined(__aarch64__)
const Backend& neon_backend();
#endif

namespace {

const Backend* detect() {
    const char* force = std::getenv("KACFTA_SIMD");
    if (force) {
        if (std::strcmp(force, "scalar") == 0) return &scalar_backend();
#if defined(KACFTA_AVX2_BACKEND)
        if (std::strcmp(force, "avx2") == 0 && __builtin_cpu_supports("avx2")) return &avx2_backend();
#endif
#if defined(__aarch64__)
        if (std::strcmp(force, "neon") == 0) return &neon_backend();
#endif
        return &scalar_backend();
    }
#if defined(KACFTA_AVX2_BACKEND)
    if (__builtin_cpu_supports("avx2")) return &avx2_backend();
#endif
#if defined(__aarch64__)
    return &neon_backend();
#endif
    return &scalar_backend();
}

} // namespace

const Backend& active() {
    static const Backend* b = detect();
    return *b;
}

std::size_t available_backends(const Backend** out, std::size_t max) {
    std::size_t n = 0;
    if (n < max) out[n++] = &scalar_backend();
#if defined(KACFTA_AVX2_BACKEND)
    if (__builtin_cpu_supports("avx2") && n < max) out[n++] = &avx2_backend();
#endif
#if defined(__aarch64__)
    if (n < max) out[n++] = &neon_backend();
#endif
    return n;
}

} // namespace kacfta::kernels
