#include "gsn/atoms.hpp"

#include <cmath>
#include <stdexcept>

#include "gsn/errors.hpp"

namespace gsn {
namespace {

constexpr double k_grid_ratio_log2 = 0.125; // geometric search grid ratio 2^(1/8)

long long lattice_count(int dim, double h) {
    return static_cast<long long>(count_ball_lattice(dim, h, 1.0 / h, 200'000'000));
}

} // namespace

HChoice choose_h(long long n_budget, int dim) {
    if (n_budget < 1) throw std::invalid_argument("choose_h: budget must be >= 1");
    const double anchor = std::pow(static_cast<double>(n_budget), -1.0 / (2.0 * dim));
    for (int m = 0;; ++m) {
        const double h = anchor * std::exp2(k_grid_ratio_log2 * m);
        const long long c = lattice_count(dim, h);
        if (c <= n_budget) return {h, c};
    }
}

HChoice choose_h_capped(long long n_budget, int dim, double h_cap) {
    if (n_budget < 1) throw std::invalid_argument("choose_h_capped: budget must be >= 1");
    const double anchor = std::pow(static_cast<double>(n_budget), -1.0 / (2.0 * dim));
    for (int m = 0;; ++m) {
        double h = anchor * std::exp2(k_grid_ratio_log2 * m);
        const bool clamped = h >= h_cap;
        if (clamped) h = h_cap;
        const long long c = lattice_count(dim, h);
        if (c <= n_budget) return {h, c};
        if (clamped)
            throw std::domain_error("choose_h_capped: budget " + std::to_string(n_budget) +
                                    " cannot fund a lattice below the aliasing threshold");
    }
}

GaussianSum full_approximant(const SpectralFunction& f, double sigma, double h, const Box& window) {
    if (!(sigma > 0.0)) throw std::invalid_argument("full_approximant: sigma must be positive");
    if (!(h > 0.0)) throw std::invalid_argument("full_approximant: h must be positive");
    if (h >= aliasing_threshold(f.radius()))
        throw std::domain_error("full_approximant: h >= pi/R is the aliasing regime");
    if (window.dim() != f.dim()) throw std::invalid_argument("full_approximant: window dimension mismatch");

    const SpectralFunction divided = f.fourier_divide(sigma);
    const int d = f.dim();
    // beyond this distance a Gaussian tail is below exp(-745), invisible in double
    const double pad = sigma * std::sqrt(745.0);

    int klo[3], khi[3];
    for (int a = 0; a < d; ++a) {
        klo[a] = static_cast<int>(std::ceil((window.lo[a] - pad) / h));
        khi[a] = static_cast<int>(std::floor((window.hi[a] + pad) / h));
    }

    GaussianSum out(d);
    const double scale = std::pow(h, d);
    GaussianTerm t;
    t.sigma = sigma;
    t.center.resize(d);
    std::vector<double> alpha(d);
    std::array<int, 3> k{};
    for (int a = 0; a < d; ++a) k[a] = klo[a];
    bool more = true;
    while (more) {
        for (int a = 0; a < d; ++a) alpha[a] = h * k[a];
        const double v = divided.eval_physical(alpha);
        t.amplitude = scale * v;
        t.center.assign(alpha.begin(), alpha.end());
        out.push_back(t);
        more = false;
        for (int a = d - 1; a >= 0; --a) {
            if (++k[a] <= khi[a]) {
                more = true;
                break;
            }
            k[a] = klo[a];
        }
    }
    return out;
}

AtomApproximation truncated_approximant(const SpectralFunction& f, double sigma, double h,
                                        std::size_t lattice_cap) {
    if (!(sigma > 0.0)) throw std::invalid_argument("truncated_approximant: sigma must be positive");
    if (!(h > 0.0)) throw std::invalid_argument("truncated_approximant: h must be positive");
    if (h >= aliasing_threshold(f.radius()))
        throw std::domain_error("truncated_approximant: h >= pi/R is the aliasing regime");

    const SpectralFunction divided = f.fourier_divide(sigma);
    const LatticeSamples samples = divided.sample_lattice(h, 1.0 / h, lattice_cap);

    AtomApproximation atom;
    atom.spacing = h;
    atom.sigma = sigma;
    atom.reference_sum = GaussianSum(f.dim());
    const double scale = std::pow(h, f.dim());
    GaussianTerm t;
    t.sigma = sigma;
    for (std::size_t i = 0; i < samples.size(); ++i) {
        t.amplitude = scale * samples.values[i];
        t.center = samples.point(i);
        atom.reference_sum.push_back(t);
    }
    return atom;
}

const AtomApproximation& AtomCache::get(const MotherWavelets& w, int gender, double h, double sigma,
                                        std::size_t lattice_cap) {
    const auto key = std::make_pair(gender, h);
    auto it = cache_.find(key);
    if (it == cache_.end()) {
        AtomApproximation atom = truncated_approximant(w.psi[gender - 1], sigma, h, lattice_cap);
        atom.gender = gender;
        it = cache_.emplace(key, std::move(atom)).first;
    }
    return it->second;
}

long long default_min_budget(const MotherWavelets& w) {
    const double h_cap = aliasing_threshold(w.psi_radius());
    long long want = 1;
    for (int a = 0; a < w.dim; ++a) want *= 3;
    for (long long n = 1;; ++n) {
        HChoice c;
        try {
            c = choose_h_capped(n, w.dim, h_cap * (1.0 - 1e-12));
        } catch (const std::domain_error&) {
            continue;
        }
        if (c.h < 0.5 * h_cap && c.count >= want) return n;
    }
}

BudgetRule resolve_rule(const MotherWavelets& w, const BudgetRule& rule) {
    BudgetRule r = rule;
    if (r.min_budget <= 0) r.min_budget = default_min_budget(w);
    if (!(r.sigma > 0.0)) throw std::invalid_argument("BudgetRule: sigma must be positive");
    return r;
}

GaussianSum atom_on_cube(const MotherWavelets& w, const WaveletIndex& idx, long long n_budget,
                         const BudgetRule& rule, AtomCache* cache) {
    if (rule.min_budget <= 0)
        throw std::invalid_argument("atom_on_cube: rule.min_budget must be resolved (> 0)");
    if (n_budget < rule.min_budget)
        throw std::invalid_argument("atom_on_cube: budget " + std::to_string(n_budget) +
                                    " below the funding floor N_0 = " + std::to_string(rule.min_budget));
    if (idx.gender == 0 || idx.gender >= (1u << w.dim))
        throw std::invalid_argument("atom_on_cube: gender out of range");

    const double h_cap = aliasing_threshold(w.psi_radius()) * (1.0 - 1e-12);
    const HChoice choice = choose_h_capped(n_budget, w.dim, h_cap);

    AtomCache local;
    AtomCache& c = cache != nullptr ? *cache : local;
    const AtomApproximation& atom = c.get(w, idx.gender, choice.h, rule.sigma, rule.lattice_cap);
    return map_sum_to_cube(atom.reference_sum, frame_of(idx));
}

} // namespace gsn
