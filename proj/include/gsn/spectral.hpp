#pragma once

#include <complex>
#include <functional>
#include <span>
#include <vector>

// Bandlimited functions represented by samples of their Fourier transform on
// a uniform tensor grid over [-R, R]^d, zero outside the ball B(0, R).
// Physical-space values come from trapezoid quadrature of the inversion
// integral; because the integrand is smooth and compactly supported the rule
// is spectrally accurate, with the usual periodization caveat: values are
// faithful only for |x| well below pi*M/(2R) per axis.
//
// Fourier conventions: forward exp(-i<xi,x>), inverse (2pi)^-d exp(+i<x,xi>).

namespace gsn {

struct LatticeSamples {
    double spacing = 0.0;
    double radius = 0.0;
    int dim = 0;
    std::vector<int> keys;      // n x dim row-major; alpha = spacing * key
    std::vector<double> values; // one per key

    std::size_t size() const { return values.size(); }
    std::vector<double> point(std::size_t i) const;
};

/// Integer lattice points k with |h*k| <= rho (Euclidean, ties included),
/// in lexicographic order; flat dim-major layout. Throws resource_error
/// beyond `cap` points.
std::vector<int> enumerate_ball_lattice(int dim, double h, double rho, std::size_t cap);
std::size_t count_ball_lattice(int dim, double h, double rho, std::size_t cap);

class SpectralFunction {
public:
    /// Empty placeholder; only valid as an assignment target.
    SpectralFunction() = default;

    /// Zero function on the given grid. M must be even and >= 32.
    SpectralFunction(int dim, double radius, int resolution);

    /// Samples fn on the grid; nodes with |xi| > R are forced to zero.
    static SpectralFunction
    sample(int dim, double radius, int resolution,
           const std::function<std::complex<double>(std::span<const double>)>& fn);

    int dim() const { return dim_; }
    double radius() const { return radius_; }
    int resolution() const { return res_; }
    int nodes_per_axis() const { return res_ + 1; }
    double node(int i) const { return radius_ * (2.0 * i - res_) / res_; }
    double spacing() const { return 2.0 * radius_ / res_; }

    std::span<const std::complex<double>> values() const { return values_; }
    std::span<std::complex<double>> values() { return values_; }
    std::complex<double>& at(std::span<const int> idx);
    const std::complex<double>& at(std::span<const int> idx) const;

    /// True when grid values satisfy f_hat(-xi) = conj(f_hat(xi)) within tol.
    bool hermitian(double tol) const;

    /// f_phi: divide by the Gaussian transform (sigma sqrt(pi))^d exp(-sigma^2|xi|^2/4)
    /// inside B(0,R), zero outside. Throws conditioning_error when
    /// sigma^2 R^2 / 4 exceeds 600 (1/phi_hat would leave double range headroom).
    SpectralFunction fourier_divide(double sigma) const;

    /// Trapezoid approximation of (2pi)^-d \int f_hat(xi) e^{i<x,xi>} dxi; real part.
    double eval_physical(std::span<const double> x) const;

    LatticeSamples sample_lattice(double h, double rho, std::size_t cap = 10'000'000) const;

    /// Trapezoid value of \int |f_hat|.
    double l1_spectrum() const;

private:
    std::complex<double> eval_inversion(std::span<const double> x) const;

    int dim_ = 0;
    double radius_ = 0.0;
    int res_ = 0;
    std::vector<std::complex<double>> values_; // (res_+1)^dim_, last axis fastest
};

} // namespace gsn
