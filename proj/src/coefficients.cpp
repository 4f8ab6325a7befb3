#include "gsn/coefficients.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <json.hpp>

#include "gsn/errors.hpp"

namespace gsn {
namespace {

// 16-point Gauss-Legendre rule on [-1, 1] (positive half; mirror for the rest)
constexpr int k_gl_n = 8;
constexpr double k_gl_x[k_gl_n] = {
    0.0950125098376374401853, 0.2816035507792589132305, 0.4580167776572273863424,
    0.6178762444026437484467, 0.7554044083550030338951, 0.8656312023878317438805,
    0.9445750230732325760780, 0.9894009349916499325962};
constexpr double k_gl_w[k_gl_n] = {
    0.1894506104550684962854, 0.1826034150449235888667, 0.1691565193950025381893,
    0.1495959888165767320815, 0.1246289712555338720525, 0.0951585116824927848099,
    0.0622535239386478928628, 0.0271524594117540948518};

void gl_axis_nodes(double lo, double hi, int panels, std::vector<double>& nodes,
                   std::vector<double>& weights) {
    nodes.clear();
    weights.clear();
    const double pw = (hi - lo) / panels;
    for (int p = 0; p < panels; ++p) {
        const double mid = lo + (p + 0.5) * pw;
        const double half = 0.5 * pw;
        for (int i = k_gl_n - 1; i >= 0; --i) {
            nodes.push_back(mid - half * k_gl_x[i]);
            weights.push_back(half * k_gl_w[i]);
        }
        for (int i = 0; i < k_gl_n; ++i) {
            nodes.push_back(mid + half * k_gl_x[i]);
            weights.push_back(half * k_gl_w[i]);
        }
    }
}

bool cube_before(const TreeEntry& e, const std::pair<int, std::span<const int>>& key) {
    if (e.index.level != key.first) return e.index.level > key.first;
    for (std::size_t a = 0; a < key.second.size(); ++a)
        if (e.index.offset[a] != key.second[a]) return e.index.offset[a] < key.second[a];
    return false; // same cube: not before
}

bool key_before(const std::pair<int, std::span<const int>>& key, const TreeEntry& e) {
    if (e.index.level != key.first) return key.first > e.index.level;
    for (std::size_t a = 0; a < key.second.size(); ++a)
        if (e.index.offset[a] != key.second[a]) return key.second[a] < e.index.offset[a];
    return false;
}

} // namespace

void CoefficientTree::add(const WaveletIndex& idx, double coeff) {
    if (finalized_) throw std::logic_error("CoefficientTree: add after finalize");
    if (idx.dim != dim_) throw std::invalid_argument("CoefficientTree: index dimension mismatch");
    if (idx.gender == 0 || idx.gender >= (1u << dim_))
        throw std::invalid_argument("CoefficientTree: gender out of range");
    if (!std::isfinite(coeff)) throw std::invalid_argument("CoefficientTree: non-finite coefficient");
    entries_.push_back({idx, coeff});
}

void CoefficientTree::finalize() {
    if (finalized_) return;
    std::sort(entries_.begin(), entries_.end(),
              [](const TreeEntry& a, const TreeEntry& b) { return index_less(a.index, b.index); });
    // merge duplicate indices by summation
    std::vector<TreeEntry> merged;
    merged.reserve(entries_.size());
    for (const auto& e : entries_) {
        if (!merged.empty() && merged.back().index == e.index)
            merged.back().coeff += e.coeff;
        else
            merged.push_back(e);
    }
    entries_ = std::move(merged);

    levels_.clear();
    level_spans_.clear();
    std::size_t i = 0;
    while (i < entries_.size()) {
        const std::size_t start = i;
        const int lv = entries_[i].index.level;
        while (i < entries_.size() && entries_[i].index.level == lv) ++i;
        levels_.push_back(lv);
        level_spans_.emplace_back(start, i);
    }
    finalized_ = true;
}

std::span<const TreeEntry> CoefficientTree::entries() const {
    if (!finalized_) throw std::logic_error("CoefficientTree: not finalized");
    return entries_;
}

int CoefficientTree::level_min() const { return levels().empty() ? 0 : levels().back(); }
int CoefficientTree::level_max() const { return levels().empty() ? 0 : levels().front(); }

const std::vector<int>& CoefficientTree::levels() const {
    if (!finalized_) throw std::logic_error("CoefficientTree: not finalized");
    return levels_;
}

std::span<const TreeEntry> CoefficientTree::level_range(int level) const {
    const auto& lv = levels();
    for (std::size_t i = 0; i < lv.size(); ++i)
        if (lv[i] == level)
            return {entries_.data() + level_spans_[i].first,
                    level_spans_[i].second - level_spans_[i].first};
    return {};
}

std::span<const TreeEntry> CoefficientTree::cube_range(int level, std::span<const int> offset) const {
    if (!finalized_) throw std::logic_error("CoefficientTree: not finalized");
    const std::pair<int, std::span<const int>> key{level, offset};
    auto lo = std::lower_bound(entries_.begin(), entries_.end(), key, cube_before);
    auto hi = std::upper_bound(entries_.begin(), entries_.end(), key, key_before);
    return {entries_.data() + (lo - entries_.begin()), static_cast<std::size_t>(hi - lo)};
}

double CoefficientTree::coefficient(const WaveletIndex& idx) const {
    for (const auto& e : cube_range(idx.level, idx.offsets()))
        if (e.index.gender == idx.gender) return e.coeff;
    return 0.0;
}

std::string CoefficientTree::to_json() const {
    if (!finalized_) throw std::logic_error("CoefficientTree: not finalized");
    nlohmann::ordered_json j;
    j["d"] = dim_;
    j["entries"] = nlohmann::ordered_json::array();
    for (const auto& e : entries_) {
        nlohmann::ordered_json je;
        je["j"] = e.index.level;
        je["k"] = std::vector<int>(e.index.offsets().begin(), e.index.offsets().end());
        std::vector<int> gender(dim_);
        for (int a = 0; a < dim_; ++a) gender[a] = (e.index.gender >> a) & 1;
        je["e"] = gender;
        je["f"] = e.coeff;
        j["entries"].push_back(std::move(je));
    }
    return j.dump();
}

CoefficientTree CoefficientTree::from_json(const std::string& text) {
    const auto j = nlohmann::json::parse(text);
    const int d = j.at("d").get<int>();
    if (d < 1 || d > 3) throw std::invalid_argument("CoefficientTree: d must be 1..3");
    CoefficientTree t(d);
    for (const auto& je : j.at("entries")) {
        WaveletIndex idx;
        idx.dim = static_cast<std::uint8_t>(d);
        idx.level = je.at("j").get<int>();
        const auto k = je.at("k").get<std::vector<int>>();
        const auto e = je.at("e").get<std::vector<int>>();
        if (static_cast<int>(k.size()) != d || static_cast<int>(e.size()) != d)
            throw std::invalid_argument("CoefficientTree: entry arity mismatch");
        idx.gender = 0;
        for (int a = 0; a < d; ++a) {
            idx.offset[a] = k[a];
            if (e[a] != 0 && e[a] != 1) throw std::invalid_argument("CoefficientTree: gender bits must be 0/1");
            idx.gender |= static_cast<std::uint8_t>(e[a] << a);
        }
        t.add(idx, je.at("f").get<double>());
    }
    t.finalize();
    return t;
}

double synthesize(const CoefficientTree& t, const MotherWavelets& w, std::span<const double> x) {
    double out = 0.0;
    for (const auto& e : t.entries()) out += e.coeff * eval_wavelet(w, e.index, x);
    return out;
}

void synthesize_batch(const CoefficientTree& t, const MotherWavelets& w,
                      std::span<const double> pts, std::span<double> out) {
    const auto d = static_cast<std::size_t>(t.dim());
    if (pts.size() != out.size() * d)
        throw std::invalid_argument("synthesize_batch: point buffer mismatch");
    std::fill(out.begin(), out.end(), 0.0);
    for (const auto& e : t.entries()) {
        for (std::size_t p = 0; p < out.size(); ++p)
            out[p] += e.coeff * eval_wavelet(w, e.index, pts.subspan(p * d, d));
    }
}

CoefficientTree analyze(const std::function<double(std::span<const double>)>& f,
                        const MotherWavelets& w, int j_min, int j_max, const Box& domain,
                        const AnalyzeOptions& opts, AnalyzeDiagnostics* diag) {
    if (domain.dim() != w.dim) throw std::invalid_argument("analyze: domain dimension mismatch");
    if (j_min > j_max) throw std::invalid_argument("analyze: empty level range");
    const int d = w.dim;

    AnalyzeDiagnostics local;
    AnalyzeDiagnostics& dg = diag != nullptr ? *diag : local;
    dg = {};

    const Box& support = opts.target_support.dim() == d ? opts.target_support : domain;

    CoefficientTree tree(d);
    std::vector<double> nodes[3], weights[3];
    std::vector<double> eta_vals[3];

    for (int j = j_max; j >= j_min; --j) {
        const double side = cube_side(j);
        const double vol = cube_volume(j, d);
        const double pad = opts.domain_pad_cubes * side;

        int klo[3], khi[3];
        for (int a = 0; a < d; ++a) {
            klo[a] = static_cast<int>(std::floor((domain.lo[a] - pad) / side));
            khi[a] = static_cast<int>(std::floor((domain.hi[a] + pad) / side));
        }

        std::array<int, 3> k{};
        const auto next_cube = [&](std::array<int, 3>& kk) {
            for (int a = d - 1; a >= 0; --a) {
                if (++kk[a] <= khi[a]) return true;
                kk[a] = klo[a];
            }
            return false;
        };
        for (int a = 0; a < d; ++a) k[a] = klo[a];

        bool more = true;
        while (more) {
            // integration window: wavelet support around the cube, clipped to the domain
            double wlo[3], whi[3];
            bool empty = false;
            for (int a = 0; a < d; ++a) {
                const double c = std::ldexp(static_cast<double>(k[a]), j);
                wlo[a] = std::max(c - opts.wavelet_halfwidth * side, domain.lo[a]);
                whi[a] = std::min(c + (opts.wavelet_halfwidth + 1.0) * side, domain.hi[a]);
                if (!(wlo[a] < whi[a])) empty = true;
            }
            if (empty) {
                more = next_cube(k);
                continue;
            }

            for (int e = 1; e < (1 << d); ++e) {
                if (tree.size() + 1 > opts.max_coefficients)
                    throw resource_error("analyze: coefficient budget exceeded");

                double prev = 0.0, est = 0.0;
                bool converged = false;
                // start with panels that already resolve the finer of the
                // wavelet scale and the target's own feature scale
                const double finest = std::min(side, opts.target_scale);
                double max_width = 0.0;
                for (int a = 0; a < d; ++a) max_width = std::max(max_width, whi[a] - wlo[a]);
                const int base_panels = std::clamp(
                    static_cast<int>(std::ceil(max_width / (0.5 * finest))), 8, 1 << 14);
                for (int refine = 0; refine <= opts.max_refine; ++refine) {
                    const int panels = base_panels << refine;
                    // per-axis nodes and generator values
                    std::size_t total = 1;
                    for (int a = 0; a < d; ++a) {
                        gl_axis_nodes(wlo[a], whi[a], panels, nodes[a], weights[a]);
                        eta_vals[a].resize(nodes[a].size());
                        const int which = (e >> a) & 1;
                        for (std::size_t i = 0; i < nodes[a].size(); ++i) {
                            const double y = (nodes[a][i] - std::ldexp(static_cast<double>(k[a]), j)) / side;
                            eta_vals[a][i] = w.eval_eta(which, y);
                        }
                        total *= nodes[a].size();
                    }

                    double acc = 0.0;
                    std::vector<std::size_t> ix(d, 0);
                    std::vector<double> x(d);
                    for (std::size_t flat = 0; flat < total; ++flat) {
                        double wt = 1.0;
                        for (int a = 0; a < d; ++a) {
                            x[a] = nodes[a][ix[a]];
                            wt *= weights[a][ix[a]] * eta_vals[a][ix[a]];
                        }
                        if (wt != 0.0) acc += wt * f(x);
                        ++dg.target_evaluations;
                        for (int a = d - 1; a >= 0; --a) {
                            if (++ix[a] < nodes[a].size()) break;
                            ix[a] = 0;
                        }
                    }
                    est = acc / vol;

                    if (refine > 0) {
                        const double delta = std::abs(est - prev);
                        // relative for visible coefficients, absolute at the
                        // noise floor for the (orthogonality) zeros
                        const double allow =
                            std::max(opts.rel_tol * std::abs(est), 0.5 * opts.coeff_floor);
                        dg.worst_residual = std::max(dg.worst_residual, delta / allow);
                        if (delta <= allow) {
                            converged = true;
                            dg.deepest_refinement = std::max(dg.deepest_refinement, refine);
                            break;
                        }
                    }
                    prev = est;
                }
                if (!converged)
                    throw numeric_error("analyze: quadrature for level " + std::to_string(j) +
                                        " did not converge to rel tol " + std::to_string(opts.rel_tol));

                ++dg.coefficients_evaluated;
                if (std::abs(est) >= opts.keep_threshold) {
                    WaveletIndex idx;
                    idx.dim = static_cast<std::uint8_t>(d);
                    idx.level = j;
                    for (int a = 0; a < d; ++a) idx.offset[a] = k[a];
                    idx.gender = static_cast<std::uint8_t>(e);
                    tree.add(idx, est);
                    ++dg.coefficients_kept;
                }
            }
            more = next_cube(k);
        }
    }
    tree.finalize();
    return tree;
}

} // namespace gsn
