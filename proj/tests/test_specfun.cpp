#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "nckk/specfun.hpp"
#include "oracles.hpp"

using namespace nckk;
constexpr double kPi = 3.14159265358979323846;

TEST_CASE("bessel_j pinned values and limits") {
    CHECK(specfun::bessel_j(0.0, 0.0) == 1.0);
    CHECK(specfun::bessel_j(2.5, 0.0) == 0.0);
    // J_{1/2}(x) = sqrt(2/(pi x)) sin x vanishes at x = pi.
    CHECK(std::fabs(specfun::bessel_j(0.5, kPi)) < 1e-13);
    // Frozen from the ascending series oracle.
    CHECK(specfun::bessel_j(1.0, 1.0) == doctest::Approx(0.44005058574493351596).epsilon(1e-12));
    CHECK(specfun::bessel_j(1.0, 1.0) ==
          doctest::Approx(oracles::bessel_j_series(1.0, 1.0)).epsilon(1e-12));
}

TEST_CASE("bessel_j against the series oracle across orders") {
    for (double nu : {0.0, 0.5, 1.0, 2.3, 5.0, 10.7, 20.0})
        for (double x : {0.05, 0.3, 1.0, 2.5, 5.0, 8.0}) {
            const double ref = oracles::bessel_j_series(nu, x);
            const double got = specfun::bessel_j(nu, x);
            CHECK(std::fabs(got - ref) <= 1e-10 * std::max(std::fabs(ref), 1e-30));
        }
}

TEST_CASE("bessel_y pinned values") {
    // Y_{1/2}(x) = -sqrt(2/(pi x)) cos x vanishes at x = pi/2.
    CHECK(std::fabs(specfun::bessel_y(0.5, 0.5 * kPi)) < 1e-13);
    // Frozen from the series oracle.
    CHECK(specfun::bessel_y(0.0, 1.0) == doctest::Approx(0.08825696421567695744).epsilon(1e-11));
    CHECK(specfun::bessel_y(0.0, 1.0) ==
          doctest::Approx(oracles::bessel_y0_series(1.0)).epsilon(1e-11));
    for (double x : {0.2, 0.7, 1.9, 3.0, 6.0})
        CHECK(specfun::bessel_y(0.0, x) ==
              doctest::Approx(oracles::bessel_y0_series(x)).epsilon(1e-10));
}

TEST_CASE("bessel domain errors") {
    CHECK_THROWS_AS(specfun::bessel_j(-0.5, 1.0), std::domain_error);
    CHECK_THROWS_AS(specfun::bessel_j(1.0, std::nan("")), std::domain_error);
    CHECK_THROWS_AS(specfun::bessel_y(0.5, 0.0), std::domain_error);
    CHECK_THROWS_AS(specfun::bessel_y(0.5, -1.0), std::domain_error);
}

TEST_CASE("bessel Wronskian J Y' - J' Y = 2/(pi x)") {
    // Spot value with the standard identity at (nu=0.3, x=2).
    const auto b = specfun::bessel_jy(0.3, 2.0);
    CHECK(b.j * b.yp - b.jp * b.y == doctest::Approx(2.0 / (kPi * 2.0)).epsilon(1e-12));
    double worst = 0.0;
    for (double nu : {0.0, 0.25, 0.5, 1.0, 1.7, 2.5, 3.9, 5.0, 6.6, 8.0, 9.3, 10.0})
        for (int i = 0; i < 40; ++i) {
            const double x = 0.1 * std::pow(500.0, i / 39.0);
            const auto w = specfun::bessel_jy(nu, x);
            worst = std::max(worst, std::fabs(w.j * w.yp - w.jp * w.y - 2.0 / (kPi * x)));
        }
    CHECK(worst <= 1e-9);
}

TEST_CASE("bessel derivatives match the recurrence") {
    for (double nu : {0.0, 0.4, 1.0, 3.2})
        for (double x : {0.5, 2.0, 11.0}) {
            const auto b = specfun::bessel_jy(nu, x);
            const double jm = specfun::bessel_j(nu + 1.0, x);
            CHECK(b.jp == doctest::Approx(nu / x * b.j - jm).epsilon(1e-10));
        }
}

TEST_CASE("laguerre basics") {
    CHECK(specfun::laguerre(0, 1.7, 5.3) == 1.0);
    for (double a : {-0.5, 0.0, 1.3, 4.0})
        for (double z : {0.0, 0.7, 4.4, 20.0})
            CHECK(specfun::laguerre(1, a, z) == doctest::Approx(1.0 + a - z).epsilon(1e-14));
    CHECK(specfun::laguerre(2, 0.5, 1.0) == doctest::Approx(-0.125).epsilon(1e-13));
    CHECK(specfun::laguerre(2, 0.5, 1.0) ==
          doctest::Approx(oracles::laguerre2_explicit(0.5, 1.0)).epsilon(1e-13));
    CHECK_THROWS_AS(specfun::laguerre(-1, 0.5, 1.0), std::domain_error);
    CHECK_THROWS_AS(specfun::laguerre(2, -1.0, 1.0), std::domain_error);
}

TEST_CASE("laguerre recurrence residual") {
    for (double a : {-0.9, -0.3, 0.5, 1.0, 2.3, 5.0})
        for (double z : {0.0, 0.5, 3.0, 11.0, 27.0, 50.0})
            for (int l = 1; l <= 30; ++l) {
                const double lm = specfun::laguerre(l - 1, a, z);
                const double l0 = specfun::laguerre(l, a, z);
                const double lp = specfun::laguerre(l + 1, a, z);
                const double resid = (l + 1.0) * lp - (2.0 * l + 1.0 + a - z) * l0 + (l + a) * lm;
                const double scale = std::fabs((l + 1.0) * lp) + std::fabs((2.0 * l + 1.0 + a - z) * l0) +
                                     std::fabs((l + a) * lm) + 1e-300;
                CHECK(std::fabs(resid) / scale <= 1e-10);
            }
}

TEST_CASE("log_gamma pinned values and recurrence oracle") {
    CHECK(specfun::log_gamma(5.0) == doctest::Approx(std::log(24.0)).epsilon(1e-14));
    CHECK(specfun::log_gamma(0.5) == doctest::Approx(0.5 * std::log(kPi)).epsilon(1e-14));
    for (double x : {0.1, 0.9, 1.5, 7.3, 23.4, 171.0})
        CHECK(specfun::log_gamma(x) ==
              doctest::Approx(oracles::log_gamma_recurrence(x)).epsilon(1e-12));
    CHECK_THROWS_AS(specfun::log_gamma(0.0), std::domain_error);
    CHECK_THROWS_AS(specfun::log_gamma(-2.0), std::domain_error);
}

TEST_CASE("integrate: pinned integrals") {
    specfun::QuadratureSpec spec;
    // finite interval
    const auto cube = specfun::integrate([](double x) { return x * x * x; }, 0.0, 1.0, spec);
    CHECK(cube.converged);
    CHECK(cube.value == doctest::Approx(0.25).epsilon(1e-13));
    // semi-infinite, mapped
    const auto expo = specfun::integrate_semi_infinite([](double z) { return std::exp(-z); }, 0.0, spec);
    CHECK(expo.converged);
    CHECK(expo.value == doctest::Approx(1.0).epsilon(1e-11));
    // normalization-style integrand: e^-z z^2 (2-z)^2 integrates to 8
    const auto norm = specfun::integrate_semi_infinite(
        [](double z) { return std::exp(-z) * z * z * (2.0 - z) * (2.0 - z); }, 0.0, spec);
    CHECK(norm.converged);
    CHECK(norm.value == doctest::Approx(8.0).epsilon(1e-11));
}

TEST_CASE("integrate: gauss-laguerre route") {
    specfun::QuadratureSpec spec;
    spec.kind = specfun::QuadratureKind::gauss_laguerre;
    spec.node_count = 24;
    const auto one = specfun::integrate_semi_infinite([](double) { return 1.0; }, 0.0, spec);
    CHECK(one.value == doctest::Approx(1.0).epsilon(1e-13));
    const auto eight = specfun::integrate_semi_infinite(
        [](double z) { return z * z * (2.0 - z) * (2.0 - z); }, 0.0, spec);
    CHECK(eight.value == doctest::Approx(8.0).epsilon(1e-12));
}

TEST_CASE("integrate: non-convergence is reported, not thrown") {
    specfun::QuadratureSpec spec;
    spec.abs_tol = 1e-300;
    spec.rel_tol = 1e-16;
    spec.max_subdivisions = 3;
    const auto r = specfun::integrate([](double x) { return std::sqrt(std::fabs(x - 0.3)); }, 0.0,
                                      1.0, spec);
    CHECK_FALSE(r.converged);
    // partial estimate still sane: exact value is (2/3)(0.3^1.5 + 0.7^1.5)
    CHECK(r.value == doctest::Approx(0.4999862).epsilon(1e-2));
    CHECK_THROWS_AS(specfun::integrate_or_throw([](double x) { return std::sqrt(std::fabs(x - 0.3)); },
                                                0.0, 1.0, spec),
                    std::runtime_error);
}

TEST_CASE("gauss_laguerre_rule properties") {
    for (double alpha : {0.0, 1.0, 2.5}) {
        const auto rule = specfun::gauss_laguerre_rule(18, alpha);
        REQUIRE(rule.nodes.size() == 18);
        for (int i = 1; i < 18; ++i) CHECK(rule.nodes[i] > rule.nodes[i - 1]);
        CHECK(rule.nodes[0] > 0.0);
        // Weights integrate the weight function: sum w = Gamma(1+alpha).
        CHECK(rule.weights.sum() ==
              doctest::Approx(std::exp(specfun::log_gamma(1.0 + alpha))).epsilon(1e-12));
    }
    // Exactness on polynomials: integral e^-z z^5 dz = 120 with 3 nodes.
    const auto rule = specfun::gauss_laguerre_rule(3, 0.0);
    double acc = 0.0;
    for (int i = 0; i < 3; ++i) acc += rule.weights[i] * std::pow(rule.nodes[i], 5);
    CHECK(acc == doctest::Approx(120.0).epsilon(1e-12));
    CHECK_THROWS_AS(specfun::gauss_laguerre_rule(0, 0.0), std::invalid_argument);
}

TEST_CASE("quadrature spec validation") {
    specfun::QuadratureSpec spec;
    spec.abs_tol = 0.0;
    CHECK_THROWS_AS(spec.validate(), std::invalid_argument);
    spec = {};
    spec.node_count = 1;
    CHECK_THROWS_AS(spec.validate(), std::invalid_argument);
}
