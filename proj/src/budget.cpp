#include "gsn/budget.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <stdexcept>

#include "gsn/errors.hpp"

namespace gsn {
namespace {

constexpr double k_floor_epsilon = 1e-12; // relative nudge before flooring costs

long long floor_budget(double cost, long long n0) {
    if (!(cost > 0.0)) return 0;
    const double nudged = cost * (1.0 + k_floor_epsilon);
    const auto n = static_cast<long long>(std::floor(nudged));
    return n >= n0 ? n : 0;
}

/// Hard guarantee sum N_I <= N. Costs sum to at most N(1+eps), so floors can
/// only break the bound by pathological alignment; trim deterministically
/// from the back (finest cubes last in tree order).
void clamp_total(std::vector<CostEntry>& entries, long long n_budget, long long n0) {
    long long total = 0;
    for (const auto& e : entries) total += e.budget;
    if (total <= n_budget) return;
    for (auto it = entries.rbegin(); it != entries.rend() && total > n_budget; ++it) {
        if (it->budget == 0) continue;
        const long long excess = total - n_budget;
        if (it->budget - excess >= n0) {
            it->budget -= excess;
            total -= excess;
        } else {
            total -= it->budget;
            it->budget = 0;
        }
    }
}

struct CubeKey {
    int level;
    std::array<int, 3> offset;
    friend bool operator==(const CubeKey&, const CubeKey&) = default;
    friend bool operator<(const CubeKey& a, const CubeKey& b) {
        if (a.level != b.level) return a.level > b.level;
        return a.offset < b.offset;
    }
};

} // namespace

bool SmoothnessParams::besov() const { return std::isinf(p); }

SmoothnessParams SmoothnessParams::make(int dim, double s, double p) {
    if (dim < 1 || dim > 3) throw std::invalid_argument("SmoothnessParams: dim must be 1..3");
    if (!(s > 0.0)) throw std::invalid_argument("SmoothnessParams: s must be positive");
    if (!(p >= 1.0)) throw std::invalid_argument("SmoothnessParams: p must be >= 1");
    SmoothnessParams out;
    out.dim = dim;
    out.s = s;
    out.p = p;
    out.q = 1.0 / (1.0 + s / dim);
    if (std::isinf(p)) {
        out.tau = dim / s;
    } else {
        out.tau = 1.0 / (1.0 / p + s / dim);
        if (out.tau > 1.0 + 1e-12)
            throw std::invalid_argument("SmoothnessParams: TL path needs 1/p + s/d >= 1 (tau <= 1)");
    }
    if (!(out.q > 0.0) || out.q > 1.0)
        throw std::invalid_argument("SmoothnessParams: q out of (0,1]");
    if (out.q > out.tau + 1e-12)
        throw std::invalid_argument("SmoothnessParams: q <= tau violated");
    // 1 - q s/d = q, the identity the budget-sum bound rests on
    const double identity = 1.0 - out.q * s / dim - out.q;
    if (std::abs(identity) > 1e-12)
        throw std::logic_error("SmoothnessParams: exponent identity failed");
    return out;
}

long long CostAllocation::total_budget() const {
    long long total = 0;
    for (const auto& e : entries) total += e.budget;
    return total;
}

std::size_t CostAllocation::funded_count() const {
    std::size_t n = 0;
    for (const auto& e : entries)
        if (e.budget > 0) ++n;
    return n;
}

void CostAllocation::write_csv(std::ostream& os, int dim) const {
    os << "j";
    for (int a = 0; a < dim; ++a) os << ",k" << a;
    for (int a = 0; a < dim; ++a) os << ",e" << a;
    os << ",cost,budget\n";
    os.precision(17);
    for (const auto& e : entries) {
        os << e.index.level;
        for (int a = 0; a < dim; ++a) os << ',' << e.index.offset[a];
        for (int a = 0; a < dim; ++a) os << ',' << ((e.index.gender >> a) & 1);
        os << ',' << e.cost << ',' << e.budget << '\n';
    }
}

double partial_maximal(const CoefficientTree& t, double s, double q, int level,
                       std::span<const int> offset) {
    const int d = t.dim();
    double acc = 0.0;
    std::array<int, 3> cube{};
    for (int a = 0; a < d; ++a) cube[a] = offset[a];
    for (int lv : t.levels()) {
        if (lv < level) break; // levels are descending; ancestors only
        std::array<int, 3> up{};
        const int shift = lv - level;
        for (int a = 0; a < d; ++a) up[a] = cube[a] >> shift;
        const double wvol = std::exp2(-static_cast<double>(lv) * s * q); // |I'|^{-sq/d}
        for (const auto& e : t.cube_range(lv, {up.data(), static_cast<std::size_t>(d)}))
            acc += wvol * std::pow(std::abs(e.coeff), q);
    }
    return std::pow(acc, 1.0 / q);
}

double tl_seminorm(const CoefficientTree& t, double s, double q, double tau) {
    if (t.empty()) return 0.0;
    const int d = t.dim();
    const int top = t.level_max();

    // closure of the support under taking ancestors up to the top level
    struct Node {
        double weight = 0.0; // sum over genders of |I|^{-sq/d} |f_I|^q
        std::vector<CubeKey> children;
    };
    std::map<CubeKey, Node> forest;
    for (const auto& e : t.entries()) {
        CubeKey key{e.index.level, {}};
        for (int a = 0; a < d; ++a) key.offset[a] = e.index.offset[a];
        const double wvol = std::exp2(-static_cast<double>(e.index.level) * s * q);
        forest[key].weight += wvol * std::pow(std::abs(e.coeff), q);
        // walk ancestors, linking child ranges as we go
        CubeKey cur = key;
        while (cur.level < top) {
            CubeKey parent{cur.level + 1, {}};
            for (int a = 0; a < d; ++a) parent.offset[a] = cur.offset[a] >> 1;
            auto [it, fresh] = forest.try_emplace(parent);
            auto& kids = it->second.children;
            if (std::find(kids.begin(), kids.end(), cur) == kids.end()) kids.push_back(cur);
            if (!fresh) break; // the rest of the chain is already linked
            cur = parent;
        }
        // ensure the node itself exists even when already at top
        (void)forest[key];
    }

    // exact integral of M^tau: depth-first, accumulating ancestor weight
    const double expo = tau / q;
    const auto volume = [&](int level) { return std::exp2(static_cast<double>(level) * d); };
    const std::function<double(const CubeKey&, double)> walk = [&](const CubeKey& key,
                                                                   double inherited) -> double {
        const Node& node = forest.at(key);
        const double w = inherited + node.weight;
        double covered = 0.0;
        double acc = 0.0;
        for (const auto& child : node.children) {
            covered += volume(child.level);
            acc += walk(child, w);
        }
        const double rest = volume(key.level) - covered;
        if (w > 0.0 && rest > 0.0) acc += rest * std::pow(w, expo);
        return acc;
    };

    double integral = 0.0;
    for (const auto& [key, node] : forest) {
        if (key.level != top) break; // map is ordered level-descending; roots first
        integral += walk(key, 0.0);
    }
    return std::pow(integral, 1.0 / tau);
}

BesovSeminorm besov_seminorm(const CoefficientTree& t, double tau, double q) {
    BesovSeminorm out;
    double acc = 0.0;
    for (int lv : t.levels()) {
        double level_sum = 0.0;
        for (const auto& e : t.level_range(lv)) level_sum += std::pow(std::abs(e.coeff), tau);
        const double a_j = std::pow(level_sum, 1.0 / tau);
        out.level_energies.emplace_back(lv, a_j);
        acc += std::pow(a_j, q);
    }
    out.value = std::pow(acc, 1.0 / q);
    return out;
}

CostAllocation tl_costs(const CoefficientTree& t, const SmoothnessParams& params, long long n_budget,
                        const BudgetRule& rule) {
    if (n_budget < 1) throw std::invalid_argument("tl_costs: budget must be >= 1");
    if (rule.min_budget <= 0) throw std::invalid_argument("tl_costs: rule.min_budget must be resolved");
    const double sem = tl_seminorm(t, params.s, params.q, params.tau);
    if (!(sem > 0.0))
        throw degenerate_input("tl_costs: zero seminorm; cost distribution undefined for the zero tree");

    CostAllocation out;
    out.requested = n_budget;
    const double n_real = static_cast<double>(n_budget);
    for (const auto& e : t.entries()) {
        CostEntry ce;
        ce.index = e.index;
        ce.coeff = e.coeff;
        if (e.coeff != 0.0) {
            const double m = partial_maximal(t, params.s, params.q, e.index.level, e.index.offsets());
            const double vol = cube_volume(e.index.level, params.dim);
            ce.cost = n_real * std::pow(m / sem, params.tau) *
                      std::pow(std::abs(e.coeff) * vol / m, params.q);
        }
        ce.budget = floor_budget(ce.cost, rule.min_budget);
        out.total_cost += ce.cost;
        out.entries.push_back(ce);
    }
    clamp_total(out.entries, n_budget, rule.min_budget);
    return out;
}

CostAllocation besov_costs(const CoefficientTree& t, const SmoothnessParams& params, long long n_budget,
                           const BudgetRule& rule) {
    if (n_budget < 1) throw std::invalid_argument("besov_costs: budget must be >= 1");
    if (rule.min_budget <= 0) throw std::invalid_argument("besov_costs: rule.min_budget must be resolved");
    const BesovSeminorm sem = besov_seminorm(t, params.tau, params.q);
    if (!(sem.value > 0.0))
        throw degenerate_input("besov_costs: zero seminorm; cost distribution undefined for the zero tree");

    std::map<int, double> energy;
    for (const auto& [lv, a] : sem.level_energies) energy[lv] = a;

    CostAllocation out;
    out.requested = n_budget;
    const double n_real = static_cast<double>(n_budget);
    for (const auto& e : t.entries()) {
        CostEntry ce;
        ce.index = e.index;
        ce.coeff = e.coeff;
        if (e.coeff != 0.0) {
            const double a_j = energy.at(e.index.level);
            ce.cost = n_real * std::pow(a_j / sem.value, params.q) *
                      std::pow(std::abs(e.coeff) / a_j, params.tau);
        }
        ce.budget = floor_budget(ce.cost, rule.min_budget);
        out.total_cost += ce.cost;
        out.entries.push_back(ce);
    }
    clamp_total(out.entries, n_budget, rule.min_budget);
    return out;
}

} // namespace gsn
