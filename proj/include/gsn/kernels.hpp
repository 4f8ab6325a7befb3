#pragma once

#include <complex>
#include <cstddef>

// Runtime-dispatched inner loops. Two data-parallel kernels carry most of the
// arithmetic in this project:
//
//   * phase_dot — the trapezoid Fourier-inversion sum
//         sum_m v[m] * exp(i*(theta0 + m*dtheta))
//     over a uniform frequency grid. Phases are generated by a complex
//     recurrence that is re-seeded from libm sincos every `phase_refresh`
//     nodes, which keeps the accumulated rounding drift below ~1e-15
//     relative regardless of n.
//
//   * gauss_accumulate — batched evaluation of a Gaussian mixture,
//         out[p] += sum_j amp[j] * exp(-|x_p - c_j|^2 / sigma_j^2).
//     Terms are accumulated in index order for every point, so scalar and
//     vector variants sum in the same order; they differ only in the exp
//     evaluation (libm vs polynomial, <= 2 ulp apart) and are
//     equivalence-tested in tests/test_kernels.cpp.
//
// Exponents below `exp_cutoff` contribute nothing representable at double
// precision and are skipped.

namespace gsn::kernels {

inline constexpr double exp_cutoff = -745.0;
inline constexpr std::size_t phase_refresh = 64;

struct Kernels {
    const char* name;

    std::complex<double> (*phase_dot)(const std::complex<double>* v, std::size_t n,
                                      double theta0, double dtheta);

    // pts: n_pts x dim row-major; centers: n_terms x dim row-major.
    // For every point, terms are added in index order.
    void (*gauss_accumulate)(std::size_t dim, std::size_t n_terms, const double* amp,
                             const double* centers, const double* inv_sigma_sq,
                             std::size_t n_pts, const double* pts, double* out);
};

const Kernels& scalar_kernels();
#if defined(GSN_BUILD_AVX2)
const Kernels& avx2_kernels();
#endif

/// Kernel set picked at first use: GSN_KERNEL=scalar|avx2 overrides, else the
/// best variant the CPU supports. Stable for the lifetime of the process.
const Kernels& active();

} // namespace gsn::kernels
