#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "gsn/gaussian.hpp"
#include "testutil.hpp"

using namespace gsn;

namespace {

GaussianSum random_sum(std::mt19937_64& rng, int dim, std::size_t n) {
    GaussianSum s(dim);
    for (std::size_t i = 0; i < n; ++i) {
        GaussianTerm t;
        t.amplitude = testutil::urand(rng, -2.0, 2.0);
        t.sigma = testutil::urand(rng, 0.3, 2.5);
        for (int a = 0; a < dim; ++a) t.center.push_back(testutil::urand(rng, -4.0, 4.0));
        s.push_back(t);
    }
    return s;
}

} // namespace

TEST_CASE("eval: empty sum is zero") {
    GaussianSum s(1);
    const double x = 0.0;
    CHECK(s({&x, 1}) == 0.0);
}

TEST_CASE("eval: kernel peak") {
    GaussianSum s(1);
    s.push_back({1.0, {0.0}, 1.0});
    const double x = 0.0;
    CHECK(s({&x, 1}) == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("eval: hand value 2 e^{-1}") {
    GaussianSum s(1);
    s.push_back({2.0, {0.0}, 1.0});
    const double x = 1.0;
    CHECK(s({&x, 1}) == doctest::Approx(2.0 * std::exp(-1.0)).epsilon(1e-13));
}

TEST_CASE("eval: dimension mismatch is an input error") {
    GaussianSum s(2);
    const double x = 0.0;
    CHECK_THROWS_AS(s({&x, 1}), std::invalid_argument);
    CHECK_THROWS_AS(s.push_back({1.0, {0.0}, 1.0}), std::invalid_argument);
    CHECK_THROWS_AS(s.push_back({1.0, {0.0, 0.0}, -1.0}), std::invalid_argument);
}

TEST_CASE("eval is exactly linear in amplitudes") {
    std::mt19937_64 rng(11);
    const auto s = random_sum(rng, 2, 40);
    GaussianSum doubled(2);
    doubled.append(s, 2.0);
    for (int trial = 0; trial < 25; ++trial) {
        const double x[2] = {testutil::urand(rng, -5.0, 5.0), testutil::urand(rng, -5.0, 5.0)};
        CHECK(doubled({x, 2}) == 2.0 * s({x, 2}));
    }
}

TEST_CASE("gaussian_fourier closed values") {
    const double zero = 0.0;
    CHECK(gaussian_fourier(1, 1.0, {&zero, 1}) == doctest::Approx(std::sqrt(M_PI)).epsilon(1e-14));
    const double zero2[2] = {0.0, 0.0};
    CHECK(gaussian_fourier(2, 2.0, {zero2, 2}) == doctest::Approx(4.0 * M_PI).epsilon(1e-14));
    CHECK_THROWS_AS(gaussian_fourier(1, 0.0, {&zero, 1}), std::invalid_argument);
    CHECK_THROWS_AS(gaussian_fourier(1, -1.0, {&zero, 1}), std::invalid_argument);
}

TEST_CASE("gaussian_fourier vs quadrature oracle, sigma in {0.5, 1, 2}, |xi| <= 10") {
    // Independent oracle: plain trapezoid of exp(-(x/sigma)^2) e^{-i xi x}.
    // The oracle's own roundoff floor is ~1e-15 absolute, so the relative
    // 1e-10 comparison carries an absolute floor at 1e-13 for the deep tail
    // (e.g. sigma=2, xi=10 has true value ~1e-43).
    for (double sigma : {0.5, 1.0, 2.0}) {
        const double lim = 30.0 * sigma;
        for (double xi = -10.0; xi <= 10.0 + 1e-12; xi += 0.5) {
            const auto oracle = testutil::trapezoid_complex(
                [&](double x) {
                    return std::exp(-(x / sigma) * (x / sigma)) * std::polar(1.0, -xi * x);
                },
                -lim, lim, 20000);
            const double got = gaussian_fourier(1, sigma, {&xi, 1});
            CHECK(std::abs(got - oracle.real()) <= 1e-10 * std::abs(got) + 1e-13);
            CHECK(std::abs(oracle.imag()) <= 1e-12);
        }
    }
}

TEST_CASE("affine pullback: corner, edge midpoint, far corner") {
    CubeFrame i1{{2.0}, 0.5};
    const double x0 = 2.0;
    CHECK(affine_pullback_point({&x0, 1}, i1)[0] == 0.0);
    const double x1 = 2.25;
    CHECK(affine_pullback_point({&x1, 1}, i1)[0] == doctest::Approx(0.5));
    CubeFrame i2{{1.0, 1.0}, 2.0};
    const double x2[2] = {3.0, 1.0};
    const auto y = affine_pullback_point({x2, 2}, i2);
    CHECK(y[0] == doctest::Approx(1.0));
    CHECK(y[1] == doctest::Approx(0.0));
}

TEST_CASE("map_sum_to_cube: identity frame and pure dilation") {
    GaussianSum s(1);
    s.push_back({1.0, {0.0}, 1.0});
    const auto id = map_sum_to_cube(s, CubeFrame{{0.0}, 1.0});
    CHECK(id.term(0).amplitude == 1.0);
    CHECK(id.term(0).center[0] == 0.0);
    CHECK(id.term(0).sigma == 1.0);
    const auto dil = map_sum_to_cube(s, CubeFrame{{0.0}, 2.0});
    CHECK(dil.term(0).sigma == 2.0);
    CHECK(dil.term(0).center[0] == 0.0);
}

TEST_CASE("map_sum_to_cube: two-sided evaluation") {
    GaussianSum s(1);
    s.push_back({1.0, {0.5}, 1.0});
    const CubeFrame frame{{3.0}, 2.0};
    const auto mapped = map_sum_to_cube(s, frame);
    const double x = 4.0, y = 0.5;
    CHECK(mapped({&x, 1}) == doctest::Approx(s({&y, 1})).epsilon(1e-13));
}

TEST_CASE("affine covariance on random sums, cubes and points") {
    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 50; ++trial) {
        const int dim = 1 + static_cast<int>(rng() % 2);
        const auto s = random_sum(rng, dim, 12);
        CubeFrame frame;
        frame.side = std::exp2(static_cast<int>(rng() % 7) - 3);
        for (int a = 0; a < dim; ++a) frame.corner.push_back(testutil::urand(rng, -4.0, 4.0));
        const auto mapped = map_sum_to_cube(s, frame);
        std::vector<double> x(dim);
        for (auto& c : x) c = testutil::urand(rng, -6.0, 6.0);
        const auto y = affine_pullback_point(x, frame);
        const double lhs = mapped(x);
        const double rhs = s(y);
        CHECK(std::abs(lhs - rhs) <= 1e-12 * (std::abs(rhs) + 1e-3));
    }
}

TEST_CASE("JSON round trip is bit exact") {
    std::mt19937_64 rng(99);
    const auto s = random_sum(rng, 2, 17);
    const std::string text = s.to_json();
    const auto back = GaussianSum::from_json(text);
    REQUIRE(back.size() == s.size());
    CHECK(back.dim() == s.dim());
    for (std::size_t j = 0; j < s.size(); ++j) {
        CHECK(back.amplitude(j) == s.amplitude(j));
        CHECK(back.sigma(j) == s.sigma(j));
        for (int a = 0; a < s.dim(); ++a) CHECK(back.center(j)[a] == s.center(j)[a]);
    }
    CHECK(back.to_json() == text);
}
