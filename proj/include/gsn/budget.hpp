#pragma once

#include <ostream>
#include <span>
#include <vector>

#include "gsn/atoms.hpp"
#include "gsn/coefficients.hpp"

// Smoothness seminorms and the two cost distributions that split a budget of
// N Gaussian centers across wavelet coefficients: Triebel-Lizorkin for L_p
// targets (p < inf) and Besov for L_inf. Costs are evaluated in ratio form,
//     TL:    c_I = N * (m_I / S)^tau * (|f_I| |I| / m_I)^q
//     Besov: c_I = N * (A_j / S)^q   * (|f_I| / A_j)^tau
// which makes the allocation exactly invariant under coefficient scaling and
// keeps intermediate magnitudes tame.

namespace gsn {

struct SmoothnessParams {
    int dim = 1;
    double s = 1.0;
    double p = 2.0; // may be +inf (Besov / L_inf path)
    double tau = 0.0;
    double q = 0.0;

    bool besov() const;
    /// Validates s > 0, p >= 1 (or inf), derives tau and q, checks q <= tau,
    /// q in (0,1], TL tau <= 1, and the exponent identity 1 - q s/d = q.
    static SmoothnessParams make(int dim, double s, double p);
};

struct CostEntry {
    WaveletIndex index;
    double coeff = 0.0;
    double cost = 0.0;
    long long budget = 0;
};

struct CostAllocation {
    long long requested = 0;
    double total_cost = 0.0;
    std::vector<CostEntry> entries; // tree order

    long long total_budget() const;
    std::size_t funded_count() const;
    void write_csv(std::ostream& os, int dim) const;
};

/// m_{s,q,I}: q-th root of the ancestor-accumulated sum over all cubes
/// I' >= I present in the tree (inclusive, all genders per cube).
double partial_maximal(const CoefficientTree& t, double s, double q, int level,
                       std::span<const int> offset);

/// |f|_{F^s_{tau,q}} evaluated exactly: the maximal function is piecewise
/// constant on the leaf partition of the support forest, so the integral is
/// a finite sum over that partition.
double tl_seminorm(const CoefficientTree& t, double s, double q, double tau);

struct BesovSeminorm {
    double value = 0.0;
    std::vector<std::pair<int, double>> level_energies; // (level, A_j), level descending
};
BesovSeminorm besov_seminorm(const CoefficientTree& t, double tau, double q);

CostAllocation tl_costs(const CoefficientTree& t, const SmoothnessParams& params, long long n_budget,
                        const BudgetRule& rule);
CostAllocation besov_costs(const CoefficientTree& t, const SmoothnessParams& params, long long n_budget,
                           const BudgetRule& rule);

} // namespace gsn
