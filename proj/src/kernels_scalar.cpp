#include "gsn/kernels.hpp"

#include <cmath>

namespace gsn::kernels {
namespace {

std::complex<double> phase_dot_scalar(const std::complex<double>* v, std::size_t n,
                                      double theta0, double dtheta) {
    double acc_re = 0.0, acc_im = 0.0;
    double p_re = 1.0, p_im = 0.0;
    double w_re = 1.0, w_im = 0.0;
    for (std::size_t m = 0; m < n; ++m) {
        if (m % phase_refresh == 0) {
            const double th = theta0 + static_cast<double>(m) * dtheta;
            p_re = std::cos(th);
            p_im = std::sin(th);
            w_re = std::cos(dtheta);
            w_im = std::sin(dtheta);
        }
        const double vr = v[m].real(), vi = v[m].imag();
        acc_re += vr * p_re - vi * p_im;
        acc_im += vr * p_im + vi * p_re;
        const double nr = p_re * w_re - p_im * w_im;
        const double ni = p_re * w_im + p_im * w_re;
        p_re = nr;
        p_im = ni;
    }
    return {acc_re, acc_im};
}

void gauss_accumulate_scalar(std::size_t dim, std::size_t n_terms, const double* amp,
                             const double* centers, const double* inv_sigma_sq,
                             std::size_t n_pts, const double* pts, double* out) {
    for (std::size_t p = 0; p < n_pts; ++p) {
        const double* x = pts + p * dim;
        double acc = out[p];
        for (std::size_t j = 0; j < n_terms; ++j) {
            const double* c = centers + j * dim;
            double r2 = 0.0;
            for (std::size_t a = 0; a < dim; ++a) {
                const double d = x[a] - c[a];
                r2 += d * d;
            }
            const double arg = -r2 * inv_sigma_sq[j];
            if (arg < exp_cutoff) continue;
            acc += amp[j] * std::exp(arg);
        }
        out[p] = acc;
    }
}

} // namespace

const Kernels& scalar_kernels() {
    static const Kernels k{"scalar", &phase_dot_scalar, &gauss_accumulate_scalar};
    return k;
}

} // namespace gsn::kernels
