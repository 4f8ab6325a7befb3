#pragma once

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "gsn/meyer.hpp"

// Finitely supported wavelet coefficient trees and the quadrature-based
// analysis f_I = |I|^-1 <f, psi_I> against the non-normalized family
// psi_I = psi((. - c(I))/l(I)). Entries are kept sorted (level descending,
// offset lexicographic, gender) so every downstream walk is deterministic
// and all genders of one cube sit in a contiguous range.

namespace gsn {

struct Box {
    std::vector<double> lo, hi;
    int dim() const { return static_cast<int>(lo.size()); }
};

struct TreeEntry {
    WaveletIndex index;
    double coeff = 0.0;
};

class CoefficientTree {
public:
    explicit CoefficientTree(int dim) : dim_(dim) {}

    void add(const WaveletIndex& idx, double coeff);
    void finalize(); // sort, merge duplicates, freeze
    bool finalized() const { return finalized_; }

    int dim() const { return dim_; }
    std::size_t size() const { return entries_.size(); }
    bool empty() const { return entries_.empty(); }
    std::span<const TreeEntry> entries() const;

    int level_min() const;
    int level_max() const;
    /// Occupied levels, descending.
    const std::vector<int>& levels() const;
    std::span<const TreeEntry> level_range(int level) const;

    /// All genders stored on the given cube (contiguous range; may be empty).
    std::span<const TreeEntry> cube_range(int level, std::span<const int> offset) const;
    double coefficient(const WaveletIndex& idx) const;

    std::string to_json() const;
    static CoefficientTree from_json(const std::string& text);

private:
    int dim_;
    bool finalized_ = false;
    std::vector<TreeEntry> entries_;
    std::vector<int> levels_;
    std::vector<std::pair<std::size_t, std::size_t>> level_spans_;
};

double synthesize(const CoefficientTree& t, const MotherWavelets& w, std::span<const double> x);
/// pts: n x dim row-major. Per-point accumulation follows entry order.
void synthesize_batch(const CoefficientTree& t, const MotherWavelets& w,
                      std::span<const double> pts, std::span<double> out);

struct AnalyzeOptions {
    double domain_pad_cubes = 8.0;   // cube enumeration pad, units of l(I)
    double wavelet_halfwidth = 60.0; // effective support of the generators, unit frame
    double target_scale = 1.0;       // finest feature scale of f; sets initial panel width
    Box target_support;              // where f is non-negligible; empty = the domain box
    double rel_tol = 1e-9;           // panel-refinement stop, relative
    double coeff_floor = 1e-10;      // absolute scale below which convergence is accepted
    double keep_threshold = 1e-12;   // drop |f_I| below this from the tree
    int max_refine = 10;
    std::size_t max_coefficients = 2'000'000;
};

struct AnalyzeDiagnostics {
    std::size_t coefficients_evaluated = 0;
    std::size_t coefficients_kept = 0;
    std::size_t target_evaluations = 0;
    int deepest_refinement = 0;
    double worst_residual = 0.0; // largest |last - previous| / max(|last|, floor)
};

/// Coefficients for every cube at levels [j_min, j_max] meeting the padded
/// domain, every gender. Throws numeric_error if any panel refinement fails
/// to meet rel_tol, resource_error past max_coefficients.
CoefficientTree analyze(const std::function<double(std::span<const double>)>& f,
                        const MotherWavelets& w, int j_min, int j_max, const Box& domain,
                        const AnalyzeOptions& opts = {}, AnalyzeDiagnostics* diag = nullptr);

} // namespace gsn
