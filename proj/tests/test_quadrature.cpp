#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "itheta/quadrature.hpp"

using namespace itheta;

namespace {

// Maclaurin-series erf, independent of std::erf; converges fast for |x| <= 3.
double erf_series(double x) {
    long double term = x, sum = x;
    for (int n = 1; n < 200; ++n) {
        term *= -static_cast<long double>(x) * x / n;
        long double add = term / (2 * n + 1);
        sum += add;
        if (std::fabs(static_cast<double>(add)) < 1e-20) break;
    }
    return static_cast<double>(sum * 2.0L / std::sqrt(M_PI));
}

}  // namespace

TEST_CASE("gauss-legendre textbook rules") {
    const Rule1D& r1 = gauss_legendre(1);
    CHECK(r1.nodes[0] == doctest::Approx(0.0));
    CHECK(r1.weights[0] == doctest::Approx(2.0));
    const Rule1D& r2 = gauss_legendre(2);
    CHECK(r2.nodes[1] == doctest::Approx(1.0 / std::sqrt(3.0)).epsilon(1e-15));
    CHECK(r2.weights[0] == doctest::Approx(1.0).epsilon(1e-15));
    CHECK_THROWS_AS(gauss_legendre(0), input_error);
    CHECK_THROWS_AS(gauss_legendre(65), input_error);
}

TEST_CASE("rule weights sum to 2 and integrate polynomials exactly") {
    for (int m = 1; m <= 64; ++m) {
        const Rule1D& r = gauss_legendre(m);
        double s = 0;
        for (double w : r.weights) s += w;
        CHECK(s == doctest::Approx(2.0).epsilon(1e-14));
    }
    // degree 2m-1 exactness spot checks
    const Rule1D& r4 = gauss_legendre(4);
    double i6 = 0;
    for (int i = 0; i < 4; ++i) i6 += r4.weights[i] * std::pow(r4.nodes[i], 6);
    CHECK(i6 == doctest::Approx(2.0 / 7.0).epsilon(1e-15));
    double i7 = 0;
    for (int i = 0; i < 4; ++i) i7 += r4.weights[i] * std::pow(r4.nodes[i], 7);
    CHECK(i7 == doctest::Approx(0.0));
}

TEST_CASE("adaptive 1-D integration") {
    auto c = integrate_1d([](double) { return 3.25; }, -1.0, 2.5, 1e-12);
    CHECK(c.value == doctest::Approx(3.25 * 3.5).epsilon(1e-15));
    CHECK(c.converged);

    auto g = integrate_1d([](double v) { return std::exp(-M_PI * v * v); }, 0.0, 1.0,
                          1e-13);
    CHECK(g.value == doctest::Approx(erf_series(std::sqrt(M_PI)) / 2.0).epsilon(1e-12));

    auto empty = integrate_1d([](double v) { return v; }, 2.0, 2.0, 1e-12);
    CHECK(empty.value == 0.0);
    CHECK(empty.converged);

    auto gk = integrate_gk15([](double v) { return std::exp(-M_PI * v * v); }, 0.0, 1.0,
                             1e-13);
    CHECK(gk.value == doctest::Approx(erf_series(std::sqrt(M_PI)) / 2.0).epsilon(1e-12));
}

TEST_CASE("adaptive integration is deterministic") {
    auto f = [](double v) { return std::sin(7 * v) * std::exp(-v * v); };
    auto a = integrate_1d(f, -2.0, 3.0, 1e-11);
    auto b = integrate_1d(f, -2.0, 3.0, 1e-11);
    CHECK(a.value == b.value);
    CHECK(a.cells_used == b.cells_used);
}

TEST_CASE("tightening the tolerance shrinks the error estimate") {
    auto f = [](double v) { return std::cos(9 * v) + std::exp(-3 * v * v); };
    auto loose = integrate_1d(f, -2.0, 2.0, 1e-6);
    auto tight = integrate_1d(f, -2.0, 2.0, 1e-12);
    CHECK(tight.error_estimate <= loose.error_estimate);
    CHECK(tight.converged);
}

TEST_CASE("adaptive 2-D integration") {
    auto one = integrate_2d([](double, double) { return 1.0; }, 1e-12);
    CHECK(one.value == doctest::Approx(1.0).epsilon(1e-15));

    // separable integrand equals the product of 1-D integrals
    auto g = [](double s) { return std::exp(-2 * s * s) + 0.5 * s; };
    auto h = [](double t) { return std::cos(3 * t); };
    auto sep = integrate_2d([&](double s, double t) { return g(s) * h(t); }, 1e-12);
    auto gs = integrate_1d(g, 0.0, 1.0, 1e-14);
    auto hs = integrate_1d(h, 0.0, 1.0, 1e-14);
    CHECK(sep.value == doctest::Approx(gs.value * hs.value).epsilon(1e-12));

    // centered gaussian bump against the same product oracle
    auto bump = integrate_2d(
        [](double s, double t) {
            return std::exp(-12.0 * ((s - .5) * (s - .5) + (t - .5) * (t - .5)));
        },
        1e-12);
    auto b1 = integrate_1d([](double s) { return std::exp(-12.0 * (s - .5) * (s - .5)); },
                           0.0, 1.0, 1e-14);
    CHECK(bump.value == doctest::Approx(b1.value * b1.value).epsilon(1e-11));
}

TEST_CASE("difference-quotient derivatives") {
    auto lin = [](double x) { return 3.0 * x - 1.0; };
    CHECK(central_diff(lin, 0.7, 1e-3) == doctest::Approx(3.0).epsilon(1e-12));
    CHECK(richardson_diff(lin, 0.7, 1e-3) == doctest::Approx(3.0).epsilon(1e-12));

    double h = 1e-3;
    double cd = central_diff([](double x) { return std::sin(x); }, 0.0, h);
    CHECK(std::fabs(cd - 1.0) < h * h / 6.0 * 1.01);

    double ce = std::fabs(central_diff([](double x) { return std::exp(x); }, 0.0, 1e-2) - 1.0);
    double re = std::fabs(richardson_diff([](double x) { return std::exp(x); }, 0.0, 1e-2) - 1.0);
    CHECK(re < 1e-2 * ce);
}
