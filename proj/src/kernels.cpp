#include "gsn/kernels.hpp"

#include <cstdlib>
#include <cstring>

namespace gsn::kernels {
namespace {

const Kernels& pick() {
    const char* force = std::getenv("GSN_KERNEL");
    if (force != nullptr) {
        if (std::strcmp(force, "scalar") == 0) return scalar_kernels();
#if defined(GSN_BUILD_AVX2)
        if (std::strcmp(force, "avx2") == 0) return avx2_kernels();
#endif
    }
#if defined(GSN_BUILD_AVX2)
    if (__builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma")) {
        return avx2_kernels();
    }
#endif
    return scalar_kernels();
}

} // namespace

const Kernels& active() {
    static const Kernels& k = pick();
    return k;
}

} // namespace gsn::kernels
