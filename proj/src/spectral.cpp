#include "gsn/spectral.hpp"

#include <cassert>
#include <cmath>
#include <stdexcept>

#include "gsn/errors.hpp"
#include "gsn/gaussian.hpp"
#include "gsn/kernels.hpp"

namespace gsn {
namespace {

constexpr double k_tie_slack = 1e-12; // relative slack so |alpha| == rho ties stay in

long long checked_pow(long long base, int exp) {
    long long v = 1;
    for (int i = 0; i < exp; ++i) v *= base;
    return v;
}

} // namespace

std::vector<double> LatticeSamples::point(std::size_t i) const {
    std::vector<double> p(dim);
    for (int a = 0; a < dim; ++a) p[a] = spacing * keys[i * dim + a];
    return p;
}

std::vector<int> enumerate_ball_lattice(int dim, double h, double rho, std::size_t cap) {
    if (dim < 1 || dim > 3) throw std::invalid_argument("lattice: dim must be 1..3");
    if (!(h > 0.0) || !(rho > 0.0)) throw std::invalid_argument("lattice: h and rho must be positive");

    const double bound = (rho / h) * (rho / h) * (1.0 + k_tie_slack);
    const int kmax = static_cast<int>(std::floor(std::sqrt(bound)));
    std::vector<int> keys;
    std::vector<int> k(dim, 0);

    const auto push = [&](std::span<const int> kk) {
        double n2 = 0.0;
        for (int a = 0; a < dim; ++a) n2 += static_cast<double>(kk[a]) * kk[a];
        if (n2 > bound) return;
        if (keys.size() / dim >= cap)
            throw resource_error("lattice enumeration exceeds cap of " + std::to_string(cap) + " points");
        keys.insert(keys.end(), kk.begin(), kk.end());
    };

    if (dim == 1) {
        for (k[0] = -kmax; k[0] <= kmax; ++k[0]) push(k);
    } else if (dim == 2) {
        for (k[0] = -kmax; k[0] <= kmax; ++k[0])
            for (k[1] = -kmax; k[1] <= kmax; ++k[1]) push(k);
    } else {
        for (k[0] = -kmax; k[0] <= kmax; ++k[0])
            for (k[1] = -kmax; k[1] <= kmax; ++k[1])
                for (k[2] = -kmax; k[2] <= kmax; ++k[2]) push(k);
    }
    return keys;
}

std::size_t count_ball_lattice(int dim, double h, double rho, std::size_t cap) {
    return enumerate_ball_lattice(dim, h, rho, cap).size() / dim;
}

SpectralFunction::SpectralFunction(int dim, double radius, int resolution)
    : dim_(dim), radius_(radius), res_(resolution) {
    if (dim < 1 || dim > 3) throw std::invalid_argument("SpectralFunction: dim must be 1..3");
    if (!(radius > 0.0)) throw std::invalid_argument("SpectralFunction: radius must be positive");
    if (resolution < 32 || resolution % 2 != 0)
        throw std::invalid_argument("SpectralFunction: resolution must be even and >= 32");
    const long long total = checked_pow(resolution + 1, dim);
    if (total > 50'000'000)
        throw resource_error("SpectralFunction: grid of " + std::to_string(total) + " nodes is too large");
    values_.assign(static_cast<std::size_t>(total), {0.0, 0.0});
}

SpectralFunction SpectralFunction::sample(
    int dim, double radius, int resolution,
    const std::function<std::complex<double>(std::span<const double>)>& fn) {
    SpectralFunction f(dim, radius, resolution);
    const int n = f.nodes_per_axis();
    const double r2 = radius * radius * (1.0 + k_tie_slack);
    std::vector<double> xi(dim);
    std::vector<int> idx(dim, 0);
    for (std::size_t flat = 0; flat < f.values_.size(); ++flat) {
        double norm2 = 0.0;
        for (int a = 0; a < dim; ++a) {
            xi[a] = f.node(idx[a]);
            norm2 += xi[a] * xi[a];
        }
        f.values_[flat] = (norm2 <= r2) ? fn(xi) : std::complex<double>{0.0, 0.0};
        for (int a = dim - 1; a >= 0; --a) {
            if (++idx[a] < n) break;
            idx[a] = 0;
        }
    }
    return f;
}

std::complex<double>& SpectralFunction::at(std::span<const int> idx) {
    std::size_t flat = 0;
    for (int a = 0; a < dim_; ++a) flat = flat * nodes_per_axis() + static_cast<std::size_t>(idx[a]);
    return values_[flat];
}

const std::complex<double>& SpectralFunction::at(std::span<const int> idx) const {
    return const_cast<SpectralFunction*>(this)->at(idx);
}

bool SpectralFunction::hermitian(double tol) const {
    const int n = nodes_per_axis();
    std::vector<int> idx(dim_, 0), mirror(dim_, 0);
    for (std::size_t flat = 0; flat < values_.size(); ++flat) {
        for (int a = 0; a < dim_; ++a) mirror[a] = res_ - idx[a];
        const auto v = values_[flat];
        const auto m = at(mirror);
        if (std::abs(m - std::conj(v)) > tol) return false;
        for (int a = dim_ - 1; a >= 0; --a) {
            if (++idx[a] < n) break;
            idx[a] = 0;
        }
    }
    return true;
}

SpectralFunction SpectralFunction::fourier_divide(double sigma) const {
    if (!(sigma > 0.0)) throw std::invalid_argument("fourier_divide: sigma must be positive");
    const double worst_exponent = sigma * sigma * radius_ * radius_ / 4.0;
    if (worst_exponent > 600.0)
        throw conditioning_error(
            "fourier_divide: 1/phi_hat exponent " + std::to_string(worst_exponent) +
                " exceeds 600; shrink sigma*R to stay within double range",
            worst_exponent);

    SpectralFunction out(dim_, radius_, res_);
    const int n = nodes_per_axis();
    const double r2 = radius_ * radius_ * (1.0 + k_tie_slack);
    std::vector<double> xi(dim_);
    std::vector<int> idx(dim_, 0);
    for (std::size_t flat = 0; flat < values_.size(); ++flat) {
        double norm2 = 0.0;
        for (int a = 0; a < dim_; ++a) {
            xi[a] = node(idx[a]);
            norm2 += xi[a] * xi[a];
        }
        if (norm2 <= r2) {
            out.values_[flat] = values_[flat] / gaussian_fourier(dim_, sigma, xi);
        }
        for (int a = dim_ - 1; a >= 0; --a) {
            if (++idx[a] < n) break;
            idx[a] = 0;
        }
    }
    return out;
}

std::complex<double> SpectralFunction::eval_inversion(std::span<const double> x) const {
    if (static_cast<int>(x.size()) != dim_)
        throw std::invalid_argument("eval_physical: point dimension mismatch");
    const auto& ker = kernels::active();
    const int n = nodes_per_axis();
    const double step = spacing();

    // Contract the fastest axis with the phase-dot kernel, then fold the
    // remaining axes over progressively smaller buffers.
    std::vector<std::complex<double>> buf(values_.begin(), values_.end());
    std::size_t rows = buf.size() / n;
    for (int a = dim_ - 1; a >= 0; --a) {
        const double theta0 = x[a] * node(0);
        const double dtheta = x[a] * step;
        const std::complex<double> w_first = 0.5 * std::polar(1.0, theta0);
        const std::complex<double> w_last = 0.5 * std::polar(1.0, x[a] * node(res_));
        for (std::size_t r = 0; r < rows; ++r) {
            const std::complex<double>* row = buf.data() + r * n;
            std::complex<double> s = ker.phase_dot(row, n, theta0, dtheta);
            s -= w_first * row[0] + w_last * row[n - 1];
            buf[r] = s;
        }
        buf.resize(rows);
        rows /= n;
    }
    double scale = 1.0;
    for (int a = 0; a < dim_; ++a) scale *= step / (2.0 * M_PI);
    return buf[0] * scale;
}

double SpectralFunction::eval_physical(std::span<const double> x) const {
    const auto v = eval_inversion(x);
#ifndef NDEBUG
    const double bound = l1_spectrum();
    double pref = 1.0;
    for (int a = 0; a < dim_; ++a) pref /= 2.0 * M_PI;
    assert(std::abs(v.imag()) <= 1e-10 * (pref * bound) + 1e-300);
#endif
    return v.real();
}

LatticeSamples SpectralFunction::sample_lattice(double h, double rho, std::size_t cap) const {
    LatticeSamples out;
    out.spacing = h;
    out.radius = rho;
    out.dim = dim_;
    out.keys = enumerate_ball_lattice(dim_, h, rho, cap);
    out.values.resize(out.keys.size() / dim_);
    std::vector<double> alpha(dim_);
    for (std::size_t i = 0; i < out.values.size(); ++i) {
        for (int a = 0; a < dim_; ++a) alpha[a] = h * out.keys[i * dim_ + a];
        out.values[i] = eval_physical(alpha);
    }
    return out;
}

double SpectralFunction::l1_spectrum() const {
    const int n = nodes_per_axis();
    double total = 0.0;
    std::vector<int> idx(dim_, 0);
    for (std::size_t flat = 0; flat < values_.size(); ++flat) {
        double w = 1.0;
        for (int a = 0; a < dim_; ++a)
            if (idx[a] == 0 || idx[a] == res_) w *= 0.5;
        total += w * std::abs(values_[flat]);
        for (int a = dim_ - 1; a >= 0; --a) {
            if (++idx[a] < n) break;
            idx[a] = 0;
        }
    }
    double scale = 1.0;
    for (int a = 0; a < dim_; ++a) scale *= spacing();
    return total * scale;
}

} // namespace gsn
