#pragma once

#include <map>
#include <span>
#include <vector>

#include "gsn/coefficients.hpp"
#include "gsn/gaussian.hpp"
#include "gsn/meyer.hpp"
#include "gsn/spectral.hpp"

// Shift-invariant Gaussian approximation of bandlimited functions and its
// budgeted form for wavelets on dyadic cubes.
//
// The quasi-interpolant of f in H_B from the lattice h*Z^d is
//     (A_h f)(x) = h^d  sum_alpha  f_phi(alpha) phi_sigma(x - alpha),
// with f_phi the inverse transform of f_hat / phi_hat (eval_physical already
// carries the (2pi)^-d inversion factor, so the amplitude is h^d f_phi(alpha)
// and nothing else). All of it is valid only below the aliasing threshold
// h < pi/R; at or past it the first alias band overlaps B(0,R) and the
// scheme diverges, so that regime is a hard error.

namespace gsn {

struct AtomApproximation {
    int gender = -1;   // set when built for a wavelet; -1 for generic inputs
    double spacing = 0.0;
    double sigma = 0.0;
    GaussianSum reference_sum{1}; // centers in h*Z^d cap B(0, 1/h), reference frame
};

struct BudgetRule {
    double sigma = 0.4;
    long long min_budget = 0; // N_0; 0 = derive default for the wavelet system
    std::size_t lattice_cap = 10'000'000;
};

struct HChoice {
    double h = 0.0;
    long long count = 0;
};

/// Smallest h on the geometric grid { N^(-1/(2d)) * 2^(m/8) : m >= 0 } whose
/// lattice h*Z^d cap B(0,1/h) has at most N points; the exact count comes with it.
HChoice choose_h(long long n_budget, int dim);

/// Same walk, but clamped at h_cap (exclusive upper bound for validity).
/// Throws std::domain_error when even the largest admissible h needs more
/// than n_budget points.
HChoice choose_h_capped(long long n_budget, int dim, double h_cap);

/// Aliasing threshold pi/R for a spectrum of the given radius.
inline double aliasing_threshold(double radius) { return M_PI / radius; }

/// h^d-scaled full lattice approximant restricted to lattice points within
/// the window padded so omitted Gaussian tails are below double precision.
GaussianSum full_approximant(const SpectralFunction& f, double sigma, double h, const Box& window);

/// Truncation to centers |alpha| <= 1/h.
AtomApproximation truncated_approximant(const SpectralFunction& f, double sigma, double h,
                                        std::size_t lattice_cap = 10'000'000);

/// Cache of reference-frame atoms keyed by (gender, h). Results are
/// bit-identical with or without it; it only amortizes lattice sampling
/// across cubes sharing a gender and budget.
class AtomCache {
public:
    const AtomApproximation& get(const MotherWavelets& w, int gender, double h, double sigma,
                                 std::size_t lattice_cap);
    std::size_t size() const { return cache_.size(); }

private:
    std::map<std::pair<int, double>, AtomApproximation> cache_;
};

/// Smallest budget the rule will fund for this wavelet system: h(N) below
/// half the aliasing threshold and at least 3^d lattice points.
long long default_min_budget(const MotherWavelets& w);

/// Rule with min_budget resolved (default derived from the system when 0).
BudgetRule resolve_rule(const MotherWavelets& w, const BudgetRule& rule);

/// T_N psi_I: budgeted reference-frame approximant of psi_gender pushed onto
/// the cube of idx. Term count <= n_budget; tensions all sigma * l(I).
/// Requires n_budget >= rule.min_budget (resolved).
GaussianSum atom_on_cube(const MotherWavelets& w, const WaveletIndex& idx, long long n_budget,
                         const BudgetRule& rule, AtomCache* cache = nullptr);

} // namespace gsn
