// AVX2+FMA variants of the inner loops. Compiled only on x86_64 and selected
// at runtime (see kernels.cpp); this TU is the only one built with -mavx2.

#include "gsn/kernels.hpp"

#if defined(GSN_BUILD_AVX2)

#include <immintrin.h>

#include <cmath>

namespace gsn::kernels {
namespace {

// exp for non-positive arguments, Cephes-style rational approximation,
// ~1 ulp over [-708, 0]. Arguments below -708 flush to zero: the scalar
// reference skips terms below exp_cutoff = -745 and values in between are
// subnormal, invisible against any normally-scaled accumulator.
inline __m256d exp_nonpos(__m256d x) {
    const __m256d log2e = _mm256_set1_pd(1.4426950408889634073599);
    const __m256d c1 = _mm256_set1_pd(6.93145751953125e-1);
    const __m256d c2 = _mm256_set1_pd(1.42860682030941723212e-6);

    const __m256d p0 = _mm256_set1_pd(1.26177193074810590878e-4);
    const __m256d p1 = _mm256_set1_pd(3.02994407707441961300e-2);
    const __m256d p2 = _mm256_set1_pd(9.99999999999999999910e-1);
    const __m256d q0 = _mm256_set1_pd(3.00198505138664455042e-6);
    const __m256d q1 = _mm256_set1_pd(2.52448340349684104192e-3);
    const __m256d q2 = _mm256_set1_pd(2.27265548208155028766e-1);
    const __m256d q3 = _mm256_set1_pd(2.00000000000000000005e0);

    const __m256d lo = _mm256_set1_pd(-708.0);
    const __m256d live = _mm256_cmp_pd(x, lo, _CMP_GE_OQ);
    x = _mm256_max_pd(x, lo);

    __m256d n = _mm256_round_pd(_mm256_mul_pd(x, log2e),
                                _MM_FROUND_TO_NEAREST_INT | _MM_FROUND_NO_EXC);
    __m256d r = _mm256_fnmadd_pd(n, c1, x);
    r = _mm256_fnmadd_pd(n, c2, r);

    const __m256d z = _mm256_mul_pd(r, r);
    __m256d p = _mm256_fmadd_pd(p0, z, p1);
    p = _mm256_fmadd_pd(p, z, p2);
    p = _mm256_mul_pd(p, r);
    __m256d q = _mm256_fmadd_pd(q0, z, q1);
    q = _mm256_fmadd_pd(q, z, q2);
    q = _mm256_fmadd_pd(q, z, q3);

    const __m256d two = _mm256_set1_pd(2.0);
    __m256d e = _mm256_div_pd(_mm256_mul_pd(two, p), _mm256_sub_pd(q, p));
    e = _mm256_add_pd(e, _mm256_set1_pd(1.0));

    // scale by 2^n; n in [-1021, 1] here, single-step exponent add is safe
    const __m256i bias = _mm256_set1_epi64x(1023);
    const __m128i n32 = _mm256_cvtpd_epi32(n);
    const __m256i n64 = _mm256_cvtepi32_epi64(n32);
    const __m256i pow2 = _mm256_slli_epi64(_mm256_add_epi64(n64, bias), 52);
    e = _mm256_mul_pd(e, _mm256_castsi256_pd(pow2));

    return _mm256_and_pd(e, live);
}

std::complex<double> phase_dot_avx2(const std::complex<double>* v, std::size_t n,
                                    double theta0, double dtheta) {
    const double wr4s = std::cos(4.0 * dtheta);
    const double wi4s = std::sin(4.0 * dtheta);
    const __m256d w4_re = _mm256_set1_pd(wr4s);
    const __m256d w4_im = _mm256_set1_pd(wi4s);

    __m256d acc_re = _mm256_setzero_pd();
    __m256d acc_im = _mm256_setzero_pd();
    __m256d p_re = _mm256_setzero_pd();
    __m256d p_im = _mm256_setzero_pd();

    static_assert(phase_refresh % 4 == 0);

    std::size_t m = 0;
    const std::size_t n4 = n - n % 4;
    for (; m < n4; m += 4) {
        if (m % phase_refresh == 0) {
            alignas(32) double pr[4], pi[4];
            for (int l = 0; l < 4; ++l) {
                const double th = theta0 + static_cast<double>(m + l) * dtheta;
                pr[l] = std::cos(th);
                pi[l] = std::sin(th);
            }
            p_re = _mm256_load_pd(pr);
            p_im = _mm256_load_pd(pi);
        }

        const __m256d a = _mm256_loadu_pd(reinterpret_cast<const double*>(v + m));     // r0 i0 r1 i1
        const __m256d b = _mm256_loadu_pd(reinterpret_cast<const double*>(v + m + 2)); // r2 i2 r3 i3
        const __m256d v_re = _mm256_permute4x64_pd(_mm256_unpacklo_pd(a, b), _MM_SHUFFLE(3, 1, 2, 0));
        const __m256d v_im = _mm256_permute4x64_pd(_mm256_unpackhi_pd(a, b), _MM_SHUFFLE(3, 1, 2, 0));

        acc_re = _mm256_fmadd_pd(v_re, p_re, acc_re);
        acc_re = _mm256_fnmadd_pd(v_im, p_im, acc_re);
        acc_im = _mm256_fmadd_pd(v_re, p_im, acc_im);
        acc_im = _mm256_fmadd_pd(v_im, p_re, acc_im);

        const __m256d nr = _mm256_fmsub_pd(p_re, w4_re, _mm256_mul_pd(p_im, w4_im));
        const __m256d ni = _mm256_fmadd_pd(p_re, w4_im, _mm256_mul_pd(p_im, w4_re));
        p_re = nr;
        p_im = ni;
    }

    alignas(32) double tr[4], ti[4];
    _mm256_store_pd(tr, acc_re);
    _mm256_store_pd(ti, acc_im);
    double out_re = (tr[0] + tr[2]) + (tr[1] + tr[3]);
    double out_im = (ti[0] + ti[2]) + (ti[1] + ti[3]);

    for (; m < n; ++m) {
        const double th = theta0 + static_cast<double>(m) * dtheta;
        const double cr = std::cos(th), ci = std::sin(th);
        out_re += v[m].real() * cr - v[m].imag() * ci;
        out_im += v[m].real() * ci + v[m].imag() * cr;
    }
    return {out_re, out_im};
}

void gauss_accumulate_avx2(std::size_t dim, std::size_t n_terms, const double* amp,
                           const double* centers, const double* inv_sigma_sq,
                           std::size_t n_pts, const double* pts, double* out) {
    const __m256d cutoff = _mm256_set1_pd(exp_cutoff);

    std::size_t p = 0;
    const std::size_t p4 = n_pts - n_pts % 4;
    for (; p < p4; p += 4) {
        __m256d xs[3];
        for (std::size_t a = 0; a < dim; ++a) {
            xs[a] = _mm256_set_pd(pts[(p + 3) * dim + a], pts[(p + 2) * dim + a],
                                  pts[(p + 1) * dim + a], pts[(p + 0) * dim + a]);
        }
        __m256d acc = _mm256_loadu_pd(out + p);
        for (std::size_t j = 0; j < n_terms; ++j) {
            const double* c = centers + j * dim;
            __m256d r2 = _mm256_setzero_pd();
            for (std::size_t a = 0; a < dim; ++a) {
                const __m256d d = _mm256_sub_pd(xs[a], _mm256_set1_pd(c[a]));
                r2 = _mm256_fmadd_pd(d, d, r2);
            }
            const __m256d arg = _mm256_mul_pd(r2, _mm256_set1_pd(-inv_sigma_sq[j]));
            const __m256d live = _mm256_cmp_pd(arg, cutoff, _CMP_GE_OQ);
            if (_mm256_testz_pd(live, live)) continue;
            __m256d e = exp_nonpos(arg);
            e = _mm256_and_pd(e, live);
            acc = _mm256_fmadd_pd(_mm256_set1_pd(amp[j]), e, acc);
        }
        _mm256_storeu_pd(out + p, acc);
    }

    if (p < n_pts) {
        scalar_kernels().gauss_accumulate(dim, n_terms, amp, centers, inv_sigma_sq,
                                          n_pts - p, pts + p * dim, out + p);
    }
}

} // namespace

const Kernels& avx2_kernels() {
    static const Kernels k{"avx2", &phase_dot_avx2, &gauss_accumulate_avx2};
    return k;
}

} // namespace gsn::kernels

#endif // GSN_BUILD_AVX2
