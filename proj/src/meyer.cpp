#include "gsn/meyer.hpp"

#include <cmath>
#include <stdexcept>

namespace gsn {
namespace {

double binomial(int n, int k) {
    double v = 1.0;
    for (int i = 1; i <= k; ++i) v = v * (n - k + i) / i;
    return v;
}

} // namespace

double meyer_nu(int order, double t) {
    if (t <= 0.0) return 0.0;
    if (t >= 1.0) return 1.0;
    // Smoothstep of matching order m, written around the symmetry point:
    //   nu(1/2 + s) = 1/2 + (2m+1) C(2m,m) * int_0^s (1/4 - u^2)^m du,
    // an odd series in s. This keeps nu(t) + nu(1-t) = 1 exact in floating
    // point, unlike the power-basis form whose large coefficients cancel.
    const double s = t - 0.5;
    double acc = 0.0;
    for (int i = 0; i <= order; ++i) {
        const double term = binomial(order, i) * std::exp2(-2.0 * (order - i)) *
                            std::pow(s, 2 * i + 1) / (2 * i + 1);
        acc += (i % 2 == 0) ? term : -term;
    }
    const double front = (2.0 * order + 1.0) * binomial(2 * order, order);
    return 0.5 + front * acc;
}

double meyer_eta0_hat(int order, double xi) {
    const double a = std::abs(xi);
    const double lo = 2.0 * M_PI / 3.0, hi = 4.0 * M_PI / 3.0;
    if (a <= lo) return 1.0;
    if (a >= hi) return 0.0;
    return std::cos(M_PI_2 * meyer_nu(order, 3.0 * a / (2.0 * M_PI) - 1.0));
}

double meyer_eta1_band(int order, double xi) {
    const double a = std::abs(xi);
    const double lo = 2.0 * M_PI / 3.0, mid = 4.0 * M_PI / 3.0, hi = 8.0 * M_PI / 3.0;
    if (a <= lo || a >= hi) return 0.0;
    if (a <= mid) return std::sin(M_PI_2 * meyer_nu(order, 3.0 * a / (2.0 * M_PI) - 1.0));
    return std::cos(M_PI_2 * meyer_nu(order, 3.0 * a / (4.0 * M_PI) - 1.0));
}

std::complex<double> meyer_eta1_hat(int order, double xi) {
    return std::polar(meyer_eta1_band(order, xi), 0.5 * xi);
}

bool WaveletIndex::same_cube(const WaveletIndex& o) const {
    if (level != o.level || dim != o.dim) return false;
    for (int a = 0; a < dim; ++a)
        if (offset[a] != o.offset[a]) return false;
    return true;
}

bool index_less(const WaveletIndex& a, const WaveletIndex& b) {
    if (a.level != b.level) return a.level > b.level;
    for (int i = 0; i < a.dim; ++i)
        if (a.offset[i] != b.offset[i]) return a.offset[i] < b.offset[i];
    return a.gender < b.gender;
}

double cube_side(int level) { return std::ldexp(1.0, level); }

double cube_volume(int level, int dim) { return std::ldexp(1.0, level * dim); }

CubeFrame frame_of(const WaveletIndex& idx) {
    CubeFrame f;
    f.side = cube_side(idx.level);
    f.corner.resize(idx.dim);
    for (int a = 0; a < idx.dim; ++a) f.corner[a] = std::ldexp(static_cast<double>(idx.offset[a]), idx.level);
    return f;
}

WaveletIndex ancestor_cube(const WaveletIndex& idx, int level_up) {
    WaveletIndex up = idx;
    up.level += level_up;
    for (int a = 0; a < idx.dim; ++a) {
        // floor division by 2^level_up; >> on negative int is arithmetic since C++20
        up.offset[a] = idx.offset[a] >> level_up;
    }
    return up;
}

double MotherWavelets::eval_eta(int which, double x) const {
    const double p[1] = {x};
    return (which == 0 ? eta0 : eta1).eval_physical(p);
}

double MotherWavelets::eval_mother(int gender, std::span<const double> y) const {
    double v = 1.0;
    for (int a = 0; a < dim; ++a) v *= eval_eta((gender >> a) & 1, y[a]);
    return v;
}

MotherWavelets build_meyer(int dim, int res, int order, int res_multivariate) {
    if (dim < 1 || dim > 3) throw std::invalid_argument("build_meyer: dim must be 1, 2 or 3");
    if (order < 3) throw std::invalid_argument("build_meyer: profile order must be >= 3");
    if (res % 8 != 0)
        throw std::invalid_argument("build_meyer: resolution must be divisible by 8 (band junctions on nodes)");
    if (res_multivariate == 0) res_multivariate = dim == 1 ? res : (dim == 2 ? 256 : 64);

    MotherWavelets w;
    w.dim = dim;
    w.order = order;
    const double r1 = meyer_univariate_radius;
    w.eta0 = SpectralFunction::sample(1, r1, res, [order](std::span<const double> xi) {
        return std::complex<double>(meyer_eta0_hat(order, xi[0]), 0.0);
    });
    w.eta1 = SpectralFunction::sample(1, r1, res, [order](std::span<const double> xi) {
        return meyer_eta1_hat(order, xi[0]);
    });

    const double rd = r1 * std::sqrt(static_cast<double>(dim));
    for (int e = 1; e < (1 << dim); ++e) {
        w.psi.push_back(SpectralFunction::sample(
            dim, rd, dim == 1 ? res : res_multivariate, [order, e, dim](std::span<const double> xi) {
                std::complex<double> v{1.0, 0.0};
                for (int a = 0; a < dim; ++a) {
                    if ((e >> a) & 1)
                        v *= meyer_eta1_hat(order, xi[a]);
                    else
                        v *= meyer_eta0_hat(order, xi[a]);
                }
                return v;
            }));
    }
    return w;
}

double eval_wavelet(const MotherWavelets& w, const WaveletIndex& idx, std::span<const double> x) {
    if (idx.dim != w.dim || static_cast<int>(x.size()) != w.dim)
        throw std::invalid_argument("eval_wavelet: dimension mismatch");
    if (idx.gender == 0 || idx.gender >= (1u << w.dim))
        throw std::invalid_argument("eval_wavelet: gender out of range");
    const double side = cube_side(idx.level);
    double v = 1.0;
    for (int a = 0; a < w.dim; ++a) {
        const double y = (x[a] - std::ldexp(static_cast<double>(idx.offset[a]), idx.level)) / side;
        v *= w.eval_eta((idx.gender >> a) & 1, y);
    }
    return v;
}

} // namespace gsn
