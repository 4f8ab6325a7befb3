#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "gsn/meyer.hpp"
#include "testutil.hpp"

using namespace gsn;

namespace {

// Physical-space inner product <eta_i, eta_j(. - shift)> by trapezoid on a
// wide window; integrands are bandlimited (|xi| <= 8pi/3 each), so step 0.125
// is far below Nyquist and the only error left is window truncation.
double eta_inner(const MotherWavelets& w, int i, int j, int shift) {
    const double step = 0.125;
    const double lim = 64.0;
    const int n = static_cast<int>(2 * lim / step);
    static std::vector<double> cache[2];
    for (int which : {0, 1}) {
        if (cache[which].empty()) {
            cache[which].resize(n + 1);
            for (int t = 0; t <= n; ++t) {
                const double x = -lim + t * step;
                cache[which][t] = w.eval_eta(which, x);
            }
        }
    }
    const int off = static_cast<int>(shift / step);
    double acc = 0.0;
    for (int t = 0; t <= n; ++t) {
        const int u = t - off;
        if (u < 0 || u > n) continue;
        acc += cache[i][t] * cache[j][u];
    }
    return acc * step;
}

} // namespace

TEST_CASE("smoothstep profile: symmetry and monotonicity") {
    for (int order : {3, 4, 7}) {
        CHECK(meyer_nu(order, 0.0) == 0.0);
        CHECK(meyer_nu(order, 1.0) == 1.0);
        double prev = 0.0;
        for (double t = 0.0; t <= 1.0 + 1e-12; t += 0.01) {
            const double v = meyer_nu(order, t);
            CHECK(v + meyer_nu(order, 1.0 - t) == doctest::Approx(1.0).epsilon(1e-12));
            CHECK(v >= prev - 1e-12);
            prev = v;
        }
    }
}

TEST_CASE("profile supports and normalization") {
    const int order = 4;
    CHECK(meyer_eta0_hat(order, 0.0) == 1.0);
    CHECK(meyer_eta0_hat(order, 2.0 * M_PI / 3.0) == 1.0);
    CHECK(meyer_eta0_hat(order, 4.0 * M_PI / 3.0) == 0.0);
    CHECK(meyer_eta1_band(order, 0.5) == 0.0);
    CHECK(meyer_eta1_band(order, 2.0 * M_PI / 3.0) == 0.0);
    CHECK(meyer_eta1_band(order, 8.0 * M_PI / 3.0) == 0.0);
    // two-scale tiling: eta0(xi)^2 + band(xi)^2 = eta0(xi/2)^2
    for (double xi = 0.0; xi <= 8.38; xi += 0.037) {
        const double lhs = std::pow(meyer_eta0_hat(order, xi), 2) +
                           std::pow(meyer_eta1_band(order, xi), 2);
        const double rhs = std::pow(meyer_eta0_hat(order, xi / 2.0), 2);
        CHECK(lhs == doctest::Approx(rhs).epsilon(1e-12));
    }
}

TEST_CASE("build_meyer: grid supports exact, genders, input validation") {
    auto w = build_meyer(1, 512);
    // eta1_hat vanishes on every node with |xi| <= 2pi/3 (node 2pi/3 = R/4 is exact)
    for (int i = 0; i <= 512; ++i) {
        const double xi = w.eta1.node(i);
        if (std::abs(xi) <= 2.0 * M_PI / 3.0 + 1e-14) {
            CHECK(w.eta1.values()[i] == std::complex<double>{0.0, 0.0});
        }
    }
    // eta0_hat(0) = 1 at the center node
    CHECK(w.eta0.values()[256] == std::complex<double>{1.0, 0.0});
    CHECK(w.eta0.hermitian(0.0));
    CHECK(w.eta1.hermitian(1e-15));

    auto w2 = build_meyer(2, 64, 4, 64);
    CHECK(w2.gender_count() == 3);
    CHECK(w2.psi.size() == 3);
    CHECK(w2.psi_radius() == doctest::Approx(meyer_univariate_radius * std::sqrt(2.0)));
    CHECK_THROWS_AS(build_meyer(4, 512), std::invalid_argument);
    CHECK_THROWS_AS(build_meyer(0, 512), std::invalid_argument);
    CHECK_THROWS_AS(build_meyer(1, 500), std::invalid_argument); // not divisible by 8
}

TEST_CASE("generator orthonormality: shifts and cross terms to 1e-6") {
    auto w = build_meyer(1, 512);
    for (int i : {0, 1})
        for (int j : {0, 1})
            for (int shift = -2; shift <= 2; ++shift) {
                const double want = (i == j && shift == 0) ? 1.0 : 0.0;
                const double got = eta_inner(w, i, j, shift);
                CAPTURE(i);
                CAPTURE(j);
                CAPTURE(shift);
                CHECK(std::abs(got - want) < 1e-6);
            }
}

TEST_CASE("wavelet has a vanishing integral") {
    auto w = build_meyer(1, 512);
    double acc = 0.0;
    const double step = 0.125;
    for (double x = -64.0; x <= 64.0 + 1e-9; x += step) acc += w.eval_eta(1, x) * step;
    CHECK(std::abs(acc) < 1e-8);
}

TEST_CASE("eval_wavelet: identity frame, dilation covariance") {
    auto w = build_meyer(1, 512);
    WaveletIndex unit;
    unit.dim = 1;
    unit.level = 0;
    unit.gender = 1;
    for (double x : {-1.3, 0.0, 0.4, 2.7}) {
        CHECK(eval_wavelet(w, unit, {&x, 1}) == w.eval_eta(1, x));
    }
    WaveletIndex dil = unit;
    dil.level = 1;
    for (double y : {-0.9, 0.25, 1.6}) {
        const double x2 = 2.0 * y;
        CHECK(eval_wavelet(w, dil, {&x2, 1}) == eval_wavelet(w, unit, {&y, 1}));
    }
    const double origin = 0.0;
    CHECK_THROWS_AS(eval_wavelet(w, WaveletIndex{0, {}, 0, 1}, {&origin, 1}),
                    std::invalid_argument);
}

TEST_CASE("tensor consistency in d=2") {
    auto w2 = build_meyer(2, 64, 4, 64);
    auto w1 = build_meyer(1, 64);
    for (int e = 1; e <= 3; ++e) {
        WaveletIndex idx;
        idx.dim = 2;
        idx.level = 0;
        idx.gender = static_cast<std::uint8_t>(e);
        const double x[2] = {0.35, -0.8};
        const double v = eval_wavelet(w2, idx, {x, 2});
        const double want =
            w1.eval_eta(e & 1, x[0]) * w1.eval_eta((e >> 1) & 1, x[1]);
        CHECK(v == doctest::Approx(want).epsilon(1e-12));
    }
}

TEST_CASE("generator decay: weighted tail below central weight") {
    auto w = build_meyer(1, 512);
    // |psi(x)| (1+|x|)^(d+1) peaks in the core, not in the tail
    double inner = 0.0, outer = 0.0;
    for (double x = 0.0; x <= 50.0; x += 0.05) {
        const double g = std::abs(w.eval_eta(1, x)) * std::pow(1.0 + x, 2);
        (x <= 10.0 ? inner : outer) = std::max(x <= 10.0 ? inner : outer, g);
    }
    CHECK(outer <= inner);
}

TEST_CASE("divided samples decay surrogate") {
    auto w = build_meyer(1, 512);
    // wavelet factor carries weight (1+|a|)^8; the scaling factor's weighted
    // decay is capped near the profile's ring exponent, tested at k=5
    const struct {
        int which;
        int k;
    } cases[] = {{1, 8}, {0, 5}};
    for (const auto& c : cases) {
        auto div = (c.which == 0 ? w.eta0 : w.eta1).fourier_divide(0.4);
        auto s = div.sample_lattice(0.25, 24.0);
        double inner = 0.0, outer = 0.0;
        for (std::size_t i = 0; i < s.size(); ++i) {
            const double a = std::abs(0.25 * s.keys[i]);
            const double g = std::abs(s.values[i]) * std::pow(1.0 + a, c.k);
            (a <= 12.0 ? inner : outer) = std::max(a <= 12.0 ? inner : outer, g);
        }
        CAPTURE(c.which);
        CHECK(outer <= inner);
    }
}

TEST_CASE("index order and cube geometry") {
    WaveletIndex a{0, {0, 0, 0}, 1, 1}, b{1, {5, 0, 0}, 1, 1};
    CHECK(index_less(b, a)); // coarser level first
    WaveletIndex c{0, {1, 0, 0}, 1, 1};
    CHECK(index_less(a, c));
    WaveletIndex d_{0, {0, 0, 0}, 2, 2};
    WaveletIndex e{0, {0, 0, 0}, 3, 2};
    CHECK(index_less(d_, e));

    CHECK(cube_side(-2) == 0.25);
    CHECK(cube_volume(3, 2) == 64.0);
    const auto f = frame_of(WaveletIndex{-1, {3, -2, 0}, 1, 2});
    CHECK(f.side == 0.5);
    CHECK(f.corner[0] == 1.5);
    CHECK(f.corner[1] == -1.0);

    const auto anc = ancestor_cube(WaveletIndex{0, {-3, 5, 0}, 1, 2}, 2);
    CHECK(anc.level == 2);
    CHECK(anc.offset[0] == -1); // floor(-3/4)
    CHECK(anc.offset[1] == 1);  // floor(5/4)
}
