#pragma once

#include <span>
#include <string>
#include <vector>

// Gaussian kernel algebra: the N-term sum container that is the project's
// output type, the Fourier-transform identity of the Gaussian, and the affine
// change of variables onto dyadic cubes.

namespace gsn {

struct GaussianTerm {
    double amplitude = 0.0;
    std::vector<double> center;
    double sigma = 1.0; // tension; same unit as the center coordinates
};

/// Finite sum  sum_j A_j exp(-|x - c_j|^2 / sigma_j^2)  with immutable-after-
/// build semantics. Terms keep their insertion order and evaluation sums in
/// that order, so results are reproducible bit for bit.
class GaussianSum {
public:
    explicit GaussianSum(int dim);

    void push_back(const GaussianTerm& t);
    void append(const GaussianSum& other, double amplitude_scale = 1.0);

    int dim() const { return dim_; }
    std::size_t size() const { return amp_.size(); }
    bool empty() const { return amp_.empty(); }

    GaussianTerm term(std::size_t j) const;
    double amplitude(std::size_t j) const { return amp_[j]; }
    double sigma(std::size_t j) const { return sigma_[j]; }
    std::span<const double> center(std::size_t j) const {
        return {centers_.data() + j * static_cast<std::size_t>(dim_), static_cast<std::size_t>(dim_)};
    }

    double operator()(std::span<const double> x) const;

    /// pts is n x dim row-major; out receives one value per point.
    void eval_batch(std::span<const double> pts, std::span<double> out) const;

    std::string to_json() const;
    static GaussianSum from_json(const std::string& text);

private:
    int dim_;
    std::vector<double> amp_;
    std::vector<double> sigma_;
    std::vector<double> inv_sigma_sq_;
    std::vector<double> centers_; // size() * dim_, row-major
};

/// Frame of a cube with corner `corner` and sidelength `side`:
/// the map g |-> g((. - corner)/side).
struct CubeFrame {
    std::vector<double> corner;
    double side = 1.0;

    int dim() const { return static_cast<int>(corner.size()); }
    double volume() const;
};

/// Fourier transform of exp(-|x/sigma|^2) at xi: (sigma sqrt(pi))^d * exp(-sigma^2 |xi|^2 / 4).
double gaussian_fourier(int dim, double sigma, std::span<const double> xi);

/// (x - corner) / side
std::vector<double> affine_pullback_point(std::span<const double> x, const CubeFrame& frame);

/// Push a reference-frame sum onto a cube: term (A, c, sigma) maps to
/// (A, corner + side*c, side*sigma).
GaussianSum map_sum_to_cube(const GaussianSum& s, const CubeFrame& frame);

} // namespace gsn
