#include <doctest.h>

#include <cmath>
#include <random>

#include "oracles/simpson.hpp"
#include "vmp/errors.hpp"
#include "vmp/eval.hpp"
#include "vmp/polys.hpp"

using namespace vmp;

namespace {
double rel(double a, double b) { return std::fabs(a - b) / std::max(std::fabs(b), 1e-300); }
}  // namespace

TEST_CASE("p = 1 is identically one") {
    for (double m : {-0.5, 0.0, 2.5, 7.0}) {
        const EvalResult r = eval_vmp(m, 1, 3.7);
        CHECK(r.value == 1.0);
    }
}

TEST_CASE("m = -1 convention") {
    const EvalResult r = eval_vmp(-1, 2, 2);
    CHECK(r.value == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(r.method == Method::convention);
    CHECK(eval_vmp(-1, 3, 2).value == doctest::Approx(0.25).epsilon(1e-15));
}

TEST_CASE("V_m(0) gamma ratio") {
    CHECK(eval_vm0(0, 2).value == doctest::Approx(1.7724538509055160).epsilon(1e-15));
    CHECK(eval_vm0(1, 2).value == doctest::Approx(std::sqrt(M_PI) / 2).epsilon(1e-15));
    CHECK(eval_vm0(2, 1).value == doctest::Approx(1.0).epsilon(1e-15));
    for (int m = 0; m <= 10; ++m) {
        // (2m)! / (4^m (m!)^2) sqrt(pi)
        double c = 1;
        for (int i = 1; i <= m; ++i) c *= (2.0 * i - 1) / (2.0 * i);
        CHECK(rel(eval_vm0(m, 2).value, c * std::sqrt(M_PI)) < 1e-14);
    }
    CHECK_THROWS_AS(eval_vm0(-0.5, 2), DomainError);
    CHECK_THROWS_AS(eval_vmp(-0.6, 2, 0), DomainError);
}

TEST_CASE("domain errors") {
    CHECK_THROWS_AS(eval_vmp(-1.5, 2, 1), DomainError);
    CHECK_THROWS_AS(eval_vmp(0, 0, 1), DomainError);
    CHECK_THROWS_AS(eval_vmp(0, -1, 1), DomainError);
    CHECK_THROWS_AS(eval_vmp(0, 2, -1), DomainError);
}

TEST_CASE("closed form for 1/p integer") {
    CHECK(eval_closed_form_inv_p(1, 2, 4) == doctest::Approx(4.0).epsilon(1e-14));
    CHECK(eval_closed_form_inv_p(0, 2, 0) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(eval_closed_form_inv_p(0, 3, 1) == doctest::Approx(5.0).epsilon(1e-14));
    CHECK_THROWS_AS(eval_closed_form_inv_p(0, 1, 1), DomainError);
    CHECK(eval_vmp(1, 0.5, 4).value == doctest::Approx(4.0).epsilon(1e-14));
    CHECK(rel(eval_closed_form_inv_p(0.3, 3, 2.2), oracle::vmp(0.3, 1.0 / 3, 2.2)) < 1e-9);
    CHECK(rel(eval_closed_form_inv_p(2, 2, 7), eval_quadrature({2, 0.5, 7}, 1e-13).value) < 1e-11);
}

TEST_CASE("asymptotic series") {
    const EvalResult r = eval_asymptotic({0, 2, 10}, 3);
    CHECK(r.value == doctest::Approx(0.0995075).epsilon(1e-12));
    const double q = eval_quadrature({0, 2, 10}, 1e-14).value;
    CHECK(std::fabs(r.value - q) <= 2 * r.abs_err_estimate);
    const EvalResult c = eval_asymptotic({-1, 2, 5}, 10);
    CHECK(c.value == doctest::Approx(0.2).epsilon(1e-15));
    const EvalResult a = eval_asymptotic({1, 3, 3}, 30);
    CHECK(std::fabs(a.value - eval_quadrature({1, 3, 3}, 1e-14).value) <= 2 * a.abs_err_estimate + 1e-15);
    CHECK_THROWS_AS(eval_asymptotic({5, 2, 0.5}, 5), AsymptoticRegimeError);
    CHECK_THROWS_AS(eval_asymptotic({0, 0.5, 5}, 5), DomainError);
}

TEST_CASE("eval_vmp agrees with the Simpson oracle") {
    CHECK(rel(eval_vmp(0, 2, 1).value, oracle::vmp(0, 2, 1)) < 1e-10);
    for (double m : {-0.7, -0.3, 0.0, 0.5, 3.0})
        for (double p : {0.7, 1.5, 2.0, 3.5})
            for (double x : {0.2, 1.0, 4.0}) {
                INFO("m=" << m << " p=" << p << " x=" << x);
                CHECK(rel(eval_vmp(m, p, x).value, oracle::vmp(m, p, x)) < 1e-8);
            }
}

TEST_CASE("error estimate is honest against the oracle") {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> um(-0.8, 8), ux(0.05, 15);
    const double ps[] = {0.5, 1.5, 2, 3};
    for (int i = 0; i < 30; ++i) {
        const double m = um(rng), x = ux(rng), p = ps[i % 4];
        const EvalResult r = eval_vmp(m, p, x, 1e-10);
        const double o = oracle::vmp(m, p, x);
        INFO("m=" << m << " p=" << p << " x=" << x);
        CHECK(std::fabs(r.value - o) <= std::max(r.abs_err_estimate, 1e-10 * std::fabs(r.value)) + 1e-11 * std::fabs(o));
    }
}

TEST_CASE("quadrature vs polynomial representation") {
    for (int m = 0; m <= 20; m += 4)
        for (double x : {0.01, 0.3, 1.0, 2.0}) {
            INFO("m=" << m << " x=" << x);
            const double q = eval_quadrature({double(m), 2, x}, 1e-13).value;
            if (m == 0) continue;
            CHECK(rel(eval_via_polynomials_extended(m, 2, x), q) < 1e-9);
        }
}

TEST_CASE("limit m -> -1 approaches x^{1-p}") {
    for (double p : {0.5, 2.0, 3.0})
        for (double x : {0.5, 2.0}) {
            double prev = 1e300;
            for (double m : {-0.9, -0.99, -0.999}) {
                const double d = std::fabs(std::pow(x, p - 1) * eval_vmp(m, p, x).value - 1);
                CHECK(d < prev);
                prev = d;
            }
        }
}

TEST_CASE("monotone in x") {
    for (double m : {0.0, 1.5}) {
        double prev2 = 1e300, prev05 = -1;
        for (double x = 0.1; x < 20; x *= 1.3) {
            const double v2 = eval_vmp(m, 2, x).value, v05 = eval_vmp(m, 0.5, x).value;
            CHECK(v2 < prev2);
            CHECK(v05 > prev05);
            CHECK(eval_vmp(m, 1, x).value == 1.0);
            prev2 = v2;
            prev05 = v05;
        }
    }
}

TEST_CASE("monotone in m: V decreasing, mV increasing") {
    for (double x : {0.0, 0.5, 3.0}) {
        double pv = 1e300, pmv = 0;
        for (double m = 0.25; m <= 10; m += 0.25) {
            const double v = eval_vmp(m, 2, x).value;
            CHECK(v < pv);
            CHECK(m * v > pmv);
            pv = v;
            pmv = m * v;
        }
    }
}

TEST_CASE("monotone in p for x >= 1") {
    for (double x : {1.0, 2.0, 5.0})
        for (double m : {0.0, 2.0}) {
            double prev = 1e300;
            for (double p = 0.5; p <= 5; p += 0.25) {
                const double v = eval_vmp(m, p, x).value;
                CHECK(v <= prev * (1 + 1e-12));
                prev = v;
            }
        }
}

TEST_CASE("scaling a^{p-1} V(ax)") {
    for (double p : {2.0, 3.0, 0.5})
        for (double x : {0.3, 2.0}) {
            double prev = p > 1 ? -1 : 1e300;
            for (double a = 0.5; a <= 8; a *= 1.25) {
                const double v = std::pow(a, p - 1) * eval_vmp(1, p, a * x).value;
                if (p > 1) CHECK(v > prev);
                else CHECK(v < prev);
                prev = v;
            }
        }
}

TEST_CASE("derivative identity with second-order convergence") {
    for (double p : {2.0, 3.0})
        for (double m : {0.0, 1.0, 2.5})
            for (double x : {0.7, 2.0}) {
                const double want = p * std::pow(x, p - 1) * (eval_vmp(m, p, x, 1e-15).value - eval_vmp(m - 1, p, x, 1e-15).value);
                auto fd = [&](double h) {
                    return (eval_vmp(m, p, x + h, 1e-15).value - eval_vmp(m, p, x - h, 1e-15).value) / (2 * h);
                };
                const double e1 = std::fabs(fd(0.02) - want), e2 = std::fabs(fd(0.01) - want);
                INFO("p=" << p << " m=" << m << " x=" << x);
                CHECK(std::log2(e1 / e2) >= 1.9);
            }
}

TEST_CASE("asymptotic sandwich at p = 2") {
    for (double m : {0.0, 1.0, 4.0})
        for (double x = 1; x <= 50; x *= 1.2) {
            const double d = 1 / x - eval_vmp(m, 2, x, 1e-15).value;
            CHECK(m / (2 * std::pow(x * x + m, 1.5)) <= d + 1e-14);
            CHECK(d < (m + 1) / (2 * x * x * x));
        }
}

TEST_CASE("Fourier transform") {
    CHECK_THROWS_AS(eval_fourier_transform(0, 0), DomainError);
    const double v = eval_fourier_transform(1, 2).value;
    CHECK(v > 0);
    CHECK(rel(v, oracle::fourier(1, 2)) < 1e-8);
    CHECK(eval_fourier_transform(1, 1).value > eval_fourier_transform(1, 3).value);
    CHECK(rel(eval_fourier_transform(0.5, 0.7).value, oracle::fourier(0.5, 0.7)) < 1e-8);
}

TEST_CASE("method tags") {
    CHECK(eval_vmp(0, 2, 0).method == Method::gamma_ratio);
    CHECK(eval_vmp(0, 0.5, 3).method == Method::closed_form_inv_p);
    CHECK(eval_vmp(0, 2, 60).method == Method::asymptotic);
    CHECK(eval_vmp(0, 2, 1).method == Method::quadrature);
    CHECK(to_string(Method::recursion) == "recursion");
}
