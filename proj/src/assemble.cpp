#include "gsn/assemble.hpp"

#include <chrono>
#include <cmath>

#include <json.hpp>

namespace gsn {

std::string ApproximationReport::to_json() const {
    nlohmann::ordered_json j;
    j["requested"] = requested;
    j["funded_indices"] = funded_indices;
    j["total_terms"] = total_terms;
    j["budget_spent"] = budget_spent;
    j["budget_slack"] = budget_slack;
    j["dropped_coefficient_mass"] = dropped_coefficient_mass;
    j["seminorm"] = seminorm;
    j["kind"] = kind;
    nlohmann::ordered_json hist = nlohmann::ordered_json::object();
    for (const auto& [lv, n] : funded_per_level) hist[std::to_string(lv)] = n;
    j["funded_per_level"] = std::move(hist);
    return j.dump(2);
}

std::pair<GaussianSum, ApproximationReport>
approximate(const CoefficientTree& t, const MotherWavelets& w, const SmoothnessParams& params,
            long long n_budget, const BudgetRule& rule_in, AtomCache* cache,
            CostAllocation* allocation_out) {
    const auto t0 = std::chrono::steady_clock::now();
    if (n_budget < 1) throw std::invalid_argument("approximate: budget must be >= 1");
    const BudgetRule rule = resolve_rule(w, rule_in);

    CostAllocation alloc = params.besov() ? besov_costs(t, params, n_budget, rule)
                                          : tl_costs(t, params, n_budget, rule);

    ApproximationReport report;
    report.requested = n_budget;
    report.kind = params.besov() ? "besov" : "tl";
    report.seminorm = params.besov() ? besov_seminorm(t, params.tau, params.q).value
                                     : tl_seminorm(t, params.s, params.q, params.tau);

    AtomCache local_cache;
    AtomCache& atoms = cache != nullptr ? *cache : local_cache;

    GaussianSum sum(w.dim);
    for (const auto& e : alloc.entries) {
        if (e.budget <= 0) {
            report.dropped_coefficient_mass += std::abs(e.coeff);
            continue;
        }
        const GaussianSum atom = atom_on_cube(w, e.index, e.budget, rule, &atoms);
        sum.append(atom, e.coeff);
        ++report.funded_indices;
        report.budget_spent += static_cast<long long>(atom.size());
        ++report.funded_per_level[e.index.level];
    }
    report.total_terms = sum.size();
    report.budget_slack = n_budget - report.budget_spent;
    report.elapsed_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

    if (allocation_out != nullptr) *allocation_out = std::move(alloc);
    return {std::move(sum), std::move(report)};
}

double residual(const CoefficientTree& t, const MotherWavelets& w, const GaussianSum& s,
                std::span<const double> x) {
    return synthesize(t, w, x) - s(x);
}

} // namespace gsn
