#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "gsn/assemble.hpp"

// Error measurement and experiment drivers: L_p norms on dense grids, h-sweeps
// for the lattice-operator bounds, N-sweeps with log-log rate fits.

namespace gsn {

struct ErrorGrid {
    Box box;
    int resolution = 512; // per axis, >= 64
    double p = 2.0;       // may be +inf
};

/// Support of the tree padded by pad_factor times the largest sidelength.
Box default_error_box(const CoefficientTree& t, double pad_factor = 8.0);

struct LpErrorDetail {
    double value = 0.0;
    double boundary_max = 0.0; // largest |residual| on the outermost grid shell
    double interior_max = 0.0; // coverage check: boundary small vs interior
};

double lp_error(const CoefficientTree& t, const MotherWavelets& w, const GaussianSum& s,
                const ErrorGrid& grid);
LpErrorDetail lp_error_detail(const CoefficientTree& t, const MotherWavelets& w,
                              const GaussianSum& s, const ErrorGrid& grid);

enum class SweepKind { full, truncated, localized };

struct SweepRow {
    double h = 0.0;
    double sup_error = 0.0; // plain sup for full/truncated; weighted sup for localized
    std::size_t terms = 0;
};

struct SweepResult {
    SweepKind kind{};
    int weight_order = 0;
    std::vector<SweepRow> rows;
    double fitted_slope = 0.0; // log-log slope of sup_error vs h (least squares)
};

struct SweepOptions {
    double sigma = 0.4;
    double window_halfwidth = 20.0; // evaluation window for full/truncated
    int grid_points = 2001;
    std::size_t lattice_cap = 10'000'000;
};

/// Sup errors of the univariate wavelet approximants over an h list
/// (every h must be below pi/R). `weight_order` is the k in the localized
/// weight (1+|x|)^k / h^k and in the slope target for the truncated bound.
SweepResult operator_bound_sweep(const MotherWavelets& w, SweepKind kind,
                                 std::span<const double> h_list, int weight_order,
                                 const SweepOptions& opts = {});

struct StudyRecord {
    long long n_requested = 0;
    std::size_t terms = 0;
    double error = 0.0;
    double seminorm = 0.0;
    double ratio = 0.0; // error / (seminorm * N^{-s/d})
    double elapsed_seconds = 0.0;
};

struct RateFit {
    std::vector<StudyRecord> records; // usable points only
    std::size_t skipped_unfunded = 0;
    double slope = 0.0;
    double fit_residual = 0.0; // rms residual of the log-log fit
};

/// Runs approximate() per budget, measures the grid L_p error and fits the
/// decay exponent. Budgets that fund nothing are skipped with a count;
/// fewer than four usable points is a study_error.
RateFit rate_study(const CoefficientTree& t, const MotherWavelets& w,
                   const SmoothnessParams& params, std::span<const long long> budgets,
                   const ErrorGrid& grid, const BudgetRule& rule);

/// Deterministic pseudo-random tree with |f_I| = |I|^{s/d + 1/2} u_I,
/// u uniform in [1/2, 1], alternating signs, populated on [0,1]^d.
CoefficientTree make_synthetic_tree(int dim, double s, int j_lo, int j_hi, int per_level,
                                    std::uint64_t seed);

double fit_loglog_slope(std::span<const double> x, std::span<const double> y,
                        double* rms_residual = nullptr);

} // namespace gsn
