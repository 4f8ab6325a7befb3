#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "gsn/coefficients.hpp"
#include "gsn/errors.hpp"
#include "gsn/meyer.hpp"
#include "testutil.hpp"

using namespace gsn;

namespace {

WaveletIndex mk(int level, int k, int gender = 1) {
    WaveletIndex idx;
    idx.dim = 1;
    idx.level = level;
    idx.offset[0] = k;
    idx.gender = static_cast<std::uint8_t>(gender);
    return idx;
}

const MotherWavelets& mother() {
    static const MotherWavelets w = build_meyer(1, 512);
    return w;
}

} // namespace

TEST_CASE("tree: ordering, duplicate merge, lookups, level cache") {
    CoefficientTree t(1);
    t.add(mk(0, 1), 1.0);
    t.add(mk(2, 0), 4.0);
    t.add(mk(0, 0), 2.0);
    t.add(mk(0, 1), 0.5); // duplicate, merges by summation
    t.add(mk(-1, 3), 3.0);
    t.finalize();

    REQUIRE(t.size() == 4);
    const auto e = t.entries();
    CHECK(e[0].index.level == 2);
    CHECK(e[1].index.level == 0);
    CHECK(e[1].index.offset[0] == 0);
    CHECK(e[2].coeff == 1.5);
    CHECK(e[3].index.level == -1);

    CHECK(t.level_max() == 2);
    CHECK(t.level_min() == -1);
    CHECK(t.levels() == std::vector<int>{2, 0, -1});
    CHECK(t.level_range(0).size() == 2);
    CHECK(t.level_range(5).empty());

    const int k1 = 1;
    CHECK(t.cube_range(0, {&k1, 1}).size() == 1);
    CHECK(t.coefficient(mk(0, 1)) == 1.5);
    CHECK(t.coefficient(mk(0, 7)) == 0.0);

    CHECK_THROWS_AS(t.add(mk(0, 9), 1.0), std::logic_error);
    CoefficientTree bad(1);
    CHECK_THROWS_AS(bad.add(mk(0, 0, 0), 1.0), std::invalid_argument);
    CHECK_THROWS_AS(bad.add(mk(0, 0, 2), 1.0), std::invalid_argument);
}

TEST_CASE("tree JSON round trip") {
    CoefficientTree t(2);
    WaveletIndex idx;
    idx.dim = 2;
    idx.level = -1;
    idx.offset = {3, -2, 0};
    idx.gender = 2;
    t.add(idx, 0.1234567890123456789);
    idx.gender = 3;
    t.add(idx, -7.5e-11);
    t.finalize();

    const auto text = t.to_json();
    const auto back = CoefficientTree::from_json(text);
    REQUIRE(back.size() == t.size());
    for (std::size_t i = 0; i < t.size(); ++i) {
        CHECK(back.entries()[i].index == t.entries()[i].index);
        CHECK(back.entries()[i].coeff == t.entries()[i].coeff);
    }
    CHECK(back.to_json() == text);
    CHECK_THROWS(CoefficientTree::from_json("{\"d\":1,\"entries\":[{\"j\":0}]}"));
}

TEST_CASE("synthesize: empty tree, single index, batch consistency") {
    const auto& w = mother();
    CoefficientTree empty(1);
    empty.finalize();
    const double x0 = 0.3;
    CHECK(synthesize(empty, w, {&x0, 1}) == 0.0);

    CoefficientTree t(1);
    t.add(mk(0, 0), 1.0);
    t.finalize();
    CHECK(synthesize(t, w, {&x0, 1}) == eval_wavelet(w, mk(0, 0), {&x0, 1}));

    CoefficientTree t2(1);
    t2.add(mk(0, 0), 0.7);
    t2.add(mk(-1, 1), -0.3);
    t2.add(mk(1, 0), 1.1);
    t2.finalize();
    std::vector<double> pts{-1.0, 0.0, 0.4, 2.0};
    std::vector<double> out(4);
    synthesize_batch(t2, w, pts, out);
    for (std::size_t i = 0; i < pts.size(); ++i)
        CHECK(out[i] == synthesize(t2, w, {&pts[i], 1}));
}

TEST_CASE("analyze recovers a single wavelet coefficient") {
    const auto& w = mother();
    const WaveletIndex target = mk(0, 0);
    const auto f = [&](std::span<const double> x) { return eval_wavelet(w, target, x); };
    Box domain{{-12.0}, {13.0}};
    AnalyzeOptions opts;
    opts.rel_tol = 1e-8;
    AnalyzeDiagnostics diag;
    const auto t = analyze(f, w, -1, 1, domain, opts, &diag);

    CHECK(t.coefficient(target) == doctest::Approx(1.0).epsilon(1e-6));
    for (const auto& e : t.entries()) {
        if (e.index == target) continue;
        CHECK(std::abs(e.coeff) < 1e-6);
    }
    CHECK(diag.coefficients_evaluated > 0);
}

TEST_CASE("analyze is linear: 3 psi_a + psi_b") {
    const auto& w = mother();
    const WaveletIndex a = mk(0, 0), b = mk(-1, 1);
    const auto f = [&](std::span<const double> x) {
        return 3.0 * eval_wavelet(w, a, x) + eval_wavelet(w, b, x);
    };
    Box domain{{-12.0}, {13.0}};
    AnalyzeOptions opts;
    opts.rel_tol = 1e-8;
    const auto t = analyze(f, w, -1, 1, domain, opts);
    CHECK(t.coefficient(a) == doctest::Approx(3.0).epsilon(1e-6));
    CHECK(t.coefficient(b) == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("analyze/synthesize round trip on a wavelet") {
    const auto& w = mother();
    const WaveletIndex target = mk(0, 0);
    const auto f = [&](std::span<const double> x) { return eval_wavelet(w, target, x); };
    Box domain{{-14.0}, {15.0}};
    AnalyzeOptions opts;
    opts.rel_tol = 1e-8;
    const auto t = analyze(f, w, -2, 2, domain, opts);
    double sup = 0.0;
    for (double x = -4.0; x <= 4.0; x += 0.05) {
        sup = std::max(sup, std::abs(synthesize(t, w, {&x, 1}) - f({&x, 1})));
    }
    CHECK(sup < 1e-5);
}

TEST_CASE("analyze non-convergence raises numeric_error") {
    const auto& w = mother();
    const auto f = [&](std::span<const double> x) { return std::cos(37.0 * x[0]); };
    Box domain{{-2.0}, {2.0}};
    AnalyzeOptions opts;
    opts.rel_tol = 1e-15;
    opts.max_refine = 1;
    CHECK_THROWS_AS(analyze(f, w, 0, 0, domain, opts), numeric_error);
}

TEST_CASE("analyze determinism") {
    const auto& w = mother();
    const auto f = [](std::span<const double> x) { return std::exp(-x[0] * x[0]); };
    Box domain{{-4.0}, {4.0}};
    AnalyzeOptions opts;
    opts.rel_tol = 1e-7;
    const auto t1 = analyze(f, w, -1, 2, domain, opts);
    const auto t2 = analyze(f, w, -1, 2, domain, opts);
    REQUIRE(t1.size() == t2.size());
    for (std::size_t i = 0; i < t1.size(); ++i) {
        CHECK(t1.entries()[i].index == t2.entries()[i].index);
        CHECK(t1.entries()[i].coeff == t2.entries()[i].coeff);
    }
}
