#include "gsn/harness.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>

#include "gsn/errors.hpp"

namespace gsn {
namespace {

// grid nodes per axis: resolution+1 points including both box faces
std::vector<double> grid_nodes(double lo, double hi, int resolution) {
    std::vector<double> x(resolution + 1);
    for (int i = 0; i <= resolution; ++i)
        x[i] = lo + (hi - lo) * static_cast<double>(i) / resolution;
    return x;
}

double uniform_half_one(std::mt19937_64& rng) {
    return 0.5 + 0.5 * static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

} // namespace

Box default_error_box(const CoefficientTree& t, double pad_factor) {
    if (t.empty()) throw std::invalid_argument("default_error_box: empty tree");
    const int d = t.dim();
    Box box;
    box.lo.assign(d, std::numeric_limits<double>::infinity());
    box.hi.assign(d, -std::numeric_limits<double>::infinity());
    double max_side = 0.0;
    for (const auto& e : t.entries()) {
        const double side = cube_side(e.index.level);
        max_side = std::max(max_side, side);
        for (int a = 0; a < d; ++a) {
            const double corner = std::ldexp(static_cast<double>(e.index.offset[a]), e.index.level);
            box.lo[a] = std::min(box.lo[a], corner);
            box.hi[a] = std::max(box.hi[a], corner + side);
        }
    }
    for (int a = 0; a < d; ++a) {
        box.lo[a] -= pad_factor * max_side;
        box.hi[a] += pad_factor * max_side;
    }
    return box;
}

LpErrorDetail lp_error_detail(const CoefficientTree& t, const MotherWavelets& w,
                              const GaussianSum& s, const ErrorGrid& grid) {
    const int d = w.dim;
    if (grid.box.dim() != d) throw std::invalid_argument("lp_error: box dimension mismatch");
    if (grid.resolution < 64) throw std::invalid_argument("lp_error: resolution must be >= 64");

    std::vector<std::vector<double>> axes(d);
    for (int a = 0; a < d; ++a) axes[a] = grid_nodes(grid.box.lo[a], grid.box.hi[a], grid.resolution);
    const int n = grid.resolution + 1;

    std::size_t total = 1;
    for (int a = 0; a < d; ++a) total *= static_cast<std::size_t>(n);

    std::vector<double> pts(total * d);
    std::vector<int> idx(d, 0);
    for (std::size_t flat = 0; flat < total; ++flat) {
        for (int a = 0; a < d; ++a) pts[flat * d + a] = axes[a][idx[a]];
        for (int a = d - 1; a >= 0; --a) {
            if (++idx[a] < n) break;
            idx[a] = 0;
        }
    }

    std::vector<double> target(total), approx(total);
    synthesize_batch(t, w, pts, target);
    s.eval_batch(pts, approx);

    LpErrorDetail out;
    const bool sup = std::isinf(grid.p);
    double acc = 0.0;
    std::fill(idx.begin(), idx.end(), 0);
    for (std::size_t flat = 0; flat < total; ++flat) {
        const double r = std::abs(target[flat] - approx[flat]);
        bool boundary = false;
        double wt = 1.0;
        for (int a = 0; a < d; ++a) {
            if (idx[a] == 0 || idx[a] == grid.resolution) {
                boundary = true;
                wt *= 0.5;
            }
        }
        if (boundary)
            out.boundary_max = std::max(out.boundary_max, r);
        else
            out.interior_max = std::max(out.interior_max, r);
        if (sup)
            acc = std::max(acc, r);
        else
            acc += wt * std::pow(r, grid.p);
        for (int a = d - 1; a >= 0; --a) {
            if (++idx[a] < n) break;
            idx[a] = 0;
        }
    }
    if (sup) {
        out.value = acc;
    } else {
        double cell = 1.0;
        for (int a = 0; a < d; ++a)
            cell *= (grid.box.hi[a] - grid.box.lo[a]) / grid.resolution;
        out.value = std::pow(acc * cell, 1.0 / grid.p);
    }
    return out;
}

double lp_error(const CoefficientTree& t, const MotherWavelets& w, const GaussianSum& s,
                const ErrorGrid& grid) {
    return lp_error_detail(t, w, s, grid).value;
}

double fit_loglog_slope(std::span<const double> x, std::span<const double> y, double* rms_residual) {
    if (x.size() != y.size() || x.size() < 2)
        throw std::invalid_argument("fit_loglog_slope: need >= 2 matched points");
    const auto n = static_cast<double>(x.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    std::vector<double> lx(x.size()), ly(y.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (!(x[i] > 0.0) || !(y[i] > 0.0))
            throw std::invalid_argument("fit_loglog_slope: inputs must be positive");
        lx[i] = std::log(x[i]);
        ly[i] = std::log(y[i]);
        sx += lx[i];
        sy += ly[i];
        sxx += lx[i] * lx[i];
        sxy += lx[i] * ly[i];
    }
    const double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    if (rms_residual != nullptr) {
        const double intercept = (sy - slope * sx) / n;
        double rss = 0.0;
        for (std::size_t i = 0; i < x.size(); ++i) {
            const double r = ly[i] - (intercept + slope * lx[i]);
            rss += r * r;
        }
        *rms_residual = std::sqrt(rss / n);
    }
    return slope;
}

SweepResult operator_bound_sweep(const MotherWavelets& w, SweepKind kind,
                                 std::span<const double> h_list, int weight_order,
                                 const SweepOptions& opts) {
    if (h_list.empty()) throw std::invalid_argument("operator_bound_sweep: empty h list");
    const SpectralFunction& psi = w.eta1;
    const double threshold = aliasing_threshold(psi.radius());
    for (double h : h_list)
        if (!(h > 0.0) || h >= threshold)
            throw std::domain_error("operator_bound_sweep: h outside (0, pi/R)");

    SweepResult out;
    out.kind = kind;
    out.weight_order = weight_order;

    for (double h : h_list) {
        SweepRow row;
        row.h = h;

        const double halfwidth =
            kind == SweepKind::localized ? 4.0 / h : opts.window_halfwidth;
        const int npts = opts.grid_points;
        std::vector<double> xs(npts);
        for (int i = 0; i < npts; ++i)
            xs[i] = -halfwidth + 2.0 * halfwidth * static_cast<double>(i) / (npts - 1);

        GaussianSum approx(1);
        if (kind == SweepKind::full) {
            Box window;
            window.lo = {-halfwidth};
            window.hi = {halfwidth};
            approx = full_approximant(psi, opts.sigma, h, window);
        } else {
            approx = truncated_approximant(psi, opts.sigma, h, opts.lattice_cap).reference_sum;
        }
        row.terms = approx.size();

        std::vector<double> av(npts);
        approx.eval_batch(xs, av);
        double sup = 0.0;
        for (int i = 0; i < npts; ++i) {
            const double err = std::abs(psi.eval_physical({&xs[i], 1}) - av[i]);
            if (kind == SweepKind::localized) {
                const double weighted = err * std::pow(1.0 + std::abs(xs[i]), weight_order) /
                                        std::pow(h, weight_order);
                sup = std::max(sup, weighted);
            } else {
                sup = std::max(sup, err);
            }
        }
        row.sup_error = sup;
        out.rows.push_back(row);
    }

    std::vector<double> hs, es;
    for (const auto& r : out.rows) {
        hs.push_back(r.h);
        es.push_back(std::max(r.sup_error, 1e-300));
    }
    out.fitted_slope = fit_loglog_slope(hs, es);
    return out;
}

RateFit rate_study(const CoefficientTree& t, const MotherWavelets& w,
                   const SmoothnessParams& params, std::span<const long long> budgets,
                   const ErrorGrid& grid, const BudgetRule& rule_in) {
    if (budgets.size() < 4) throw study_error("rate_study: need at least 4 budgets");
    for (std::size_t i = 1; i < budgets.size(); ++i)
        if (budgets[i] <= budgets[i - 1])
            throw std::invalid_argument("rate_study: budgets must be strictly increasing");

    const BudgetRule rule = resolve_rule(w, rule_in);
    AtomCache cache;
    RateFit fit;
    for (long long n : budgets) {
        const auto t0 = std::chrono::steady_clock::now();
        auto [sum, report] = approximate(t, w, params, n, rule, &cache);
        if (report.funded_indices == 0) {
            ++fit.skipped_unfunded;
            continue;
        }
        StudyRecord rec;
        rec.n_requested = n;
        rec.terms = sum.size();
        rec.error = lp_error(t, w, sum, grid);
        rec.seminorm = report.seminorm;
        rec.ratio = rec.error / (rec.seminorm * std::pow(static_cast<double>(n), -params.s / params.dim));
        rec.elapsed_seconds =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        fit.records.push_back(rec);
    }
    if (fit.records.size() < 4)
        throw study_error("rate_study: fewer than 4 budgets funded anything");

    std::vector<double> ns, es;
    for (const auto& r : fit.records) {
        ns.push_back(static_cast<double>(r.n_requested));
        es.push_back(std::max(r.error, 1e-300));
    }
    fit.slope = fit_loglog_slope(ns, es, &fit.fit_residual);
    return fit;
}

CoefficientTree make_synthetic_tree(int dim, double s, int j_lo, int j_hi, int per_level,
                                    std::uint64_t seed) {
    if (j_lo > j_hi) throw std::invalid_argument("make_synthetic_tree: j_lo must be <= j_hi");
    if (per_level < 1) throw std::invalid_argument("make_synthetic_tree: per_level must be >= 1");
    std::mt19937_64 rng(seed);
    CoefficientTree t(dim);
    const int genders = (1 << dim) - 1;
    long long entry_counter = 0;
    for (int j = j_hi; j >= j_lo; --j) {
        // cubes inside [0,1]^d at level j; coarse levels hold a single cube
        const long long avail = j >= 0 ? 1 : (1LL << (-j));
        const long long count = std::min<long long>(per_level, avail);
        for (long long i = 0; i < count; ++i) {
            const long long k0 = i * avail / count;
            WaveletIndex idx;
            idx.dim = static_cast<std::uint8_t>(dim);
            idx.level = j;
            idx.offset[0] = static_cast<int>(k0);
            for (int a = 1; a < dim; ++a)
                idx.offset[a] = static_cast<int>((k0 * (a + 3)) % avail); // deterministic spread
            idx.gender = static_cast<std::uint8_t>(1 + entry_counter % genders);
            const double u = uniform_half_one(rng);
            const double mag = std::exp2(static_cast<double>(j) * (s + dim / 2.0)) * u;
            const double sign = entry_counter % 2 == 0 ? 1.0 : -1.0;
            t.add(idx, sign * mag);
            ++entry_counter;
        }
    }
    t.finalize();
    return t;
}

} // namespace gsn
