#pragma once

#include <map>
#include <string>
#include <utility>

#include "gsn/budget.hpp"

// End-to-end construction of the N-term approximant
//     s_f = sum_{funded I} f_I * T_{N_I} psi_I.
// Wavelets whose floored cost falls below N_0 receive nothing and are dropped;
// leftover budget is reported, never redistributed.

namespace gsn {

struct ApproximationReport {
    long long requested = 0;
    std::size_t funded_indices = 0;
    std::size_t total_terms = 0;
    long long budget_spent = 0;
    long long budget_slack = 0;
    double dropped_coefficient_mass = 0.0; // sum over unfunded |f_I|
    double seminorm = 0.0;
    std::string kind;                          // "tl" | "besov"
    std::map<int, long long> funded_per_level; // level -> funded index count
    double elapsed_seconds = 0.0;              // in-memory only, not serialized

    /// Deterministic serialization (timing deliberately excluded).
    std::string to_json() const;
};

std::pair<GaussianSum, ApproximationReport>
approximate(const CoefficientTree& t, const MotherWavelets& w, const SmoothnessParams& params,
            long long n_budget, const BudgetRule& rule, AtomCache* cache = nullptr,
            CostAllocation* allocation_out = nullptr);

/// Pointwise f - s_f for the harness.
double residual(const CoefficientTree& t, const MotherWavelets& w, const GaussianSum& s,
                std::span<const double> x);

} // namespace gsn
