#pragma once

#include <array>
#include <complex>
#include <cstdint>
#include <span>
#include <vector>

#include "gsn/gaussian.hpp"
#include "gsn/spectral.hpp"

// Meyer-type orthonormal MRA wavelet system, built in the Fourier domain.
// The univariate scaling function eta0 has spectrum supported in
// [-4pi/3, 4pi/3], the wavelet eta1 in 2pi/3 <= |xi| <= 8pi/3, with the
// e^{i xi/2} phase that makes eta1 real-valued. Multivariate wavelets are
// tensor products indexed by a gender e in {0,1}^d \ {0}.
//
// The crossover profile is a polynomial smoothstep of configurable matching
// order. The junction smoothness caps the polynomial decay of the wavelet
// tails at x^-(order+2), while steeper transitions (higher order, or the
// C-infinity exponential step) slow the envelope decay over the first few
// dozen unit lengths, which is where the truncated-lattice operators live.
// Order 4 balances the two: tails fall like x^-6 and the near-range envelope
// stays steep enough for the operator bound checks.

namespace gsn {

inline constexpr double meyer_univariate_radius = 8.0 * M_PI / 3.0;

/// Smoothstep: 0 for t<=0, 1 for t>=1, C^order junctions.
double meyer_nu(int order, double t);
double meyer_eta0_hat(int order, double xi);
/// Modulus of eta1_hat (real, even); the full transform is e^{i xi/2} * this.
double meyer_eta1_band(int order, double xi);
std::complex<double> meyer_eta1_hat(int order, double xi);

/// Dyadic cube 2^level * (offset + [0,1]^d) plus a tensor gender bitmask
/// (bit a set = axis a uses the wavelet eta1). gender == 0 is reserved for
/// the scaling function and never appears in expansions.
struct WaveletIndex {
    int level = 0;
    std::array<int, 3> offset{};
    std::uint8_t gender = 1;
    std::uint8_t dim = 1;

    std::span<const int> offsets() const { return {offset.data(), dim}; }
    bool same_cube(const WaveletIndex& o) const;
    friend bool operator==(const WaveletIndex&, const WaveletIndex&) = default;
};

/// Deterministic ordering used everywhere: level descending, then offset
/// lexicographic, then gender.
bool index_less(const WaveletIndex& a, const WaveletIndex& b);

CubeFrame frame_of(const WaveletIndex& idx);
/// Sidelength 2^level, volume 2^(level*d).
double cube_side(int level);
double cube_volume(int level, int dim);
/// Ancestor cube at `level_up` levels above (same gender field, offset >>= level_up).
WaveletIndex ancestor_cube(const WaveletIndex& idx, int level_up);

struct MotherWavelets {
    int dim = 1;
    int order = 4;
    SpectralFunction eta0;
    SpectralFunction eta1;
    std::vector<SpectralFunction> psi; // gender e at psi[e-1]

    int gender_count() const { return (1 << dim) - 1; }
    double psi_radius() const { return psi[0].radius(); }

    /// Univariate generator value (which: 0 scaling, 1 wavelet) by inversion quadrature.
    double eval_eta(int which, double x) const;
    /// Mother wavelet psi_e(y) = prod_a eta_{e_a}(y_a).
    double eval_mother(int gender, std::span<const double> y) const;
};

/// d in {1,2,3}. `res` is the univariate grid resolution; the d-variate
/// spectra use `res_multivariate` per axis (0 picks 512 / 256 / 64 for d=1/2/3).
MotherWavelets build_meyer(int dim, int res = 512, int order = 4, int res_multivariate = 0);

/// psi_e((x - c(I)) / l(I)) via per-axis univariate evaluations.
double eval_wavelet(const MotherWavelets& w, const WaveletIndex& idx, std::span<const double> x);

} // namespace gsn
