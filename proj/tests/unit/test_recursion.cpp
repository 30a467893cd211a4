#include <doctest.h>

#include <cmath>

#include "vmp/errors.hpp"
#include "vmp/eval.hpp"
#include "vmp/recursion.hpp"

using namespace vmp;

namespace {
double rel(double a, double b) { return std::fabs(a - b) / std::max(std::fabs(b), 1e-300); }
}  // namespace

TEST_CASE("first step from V_0 and V_{-1}") {
    for (double x : {0.3, 1.0, 2.5}) {
        const RecursionSeed s = make_seed(-1, 2, x);
        const RecursionChain c = recurse_up(s, 1);
        const double v0 = eval_vmp(0, 2, x, 1e-13).value;
        CHECK(rel(c.values.back(), (0.5 - x * x) * v0 + x) < 1e-12);
    }
}

TEST_CASE("p = 1 keeps ones") {
    RecursionSeed s;
    s.m0 = 0;
    s.v_m0 = 1;
    s.v_m0_minus_1 = 1;
    s.p = 1;
    s.x = 3;
    const RecursionChain c = recurse_up(s, 9, false);
    for (double v : c.values) CHECK(v == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("chain at x = 1 matches eval") {
    const RecursionChain c = recurse_up(make_seed(-1, 2, 1), 5);
    for (std::size_t i = 0; i < c.values.size(); ++i) {
        const double m = c.first_m + i;
        CHECK(rel(c.values[i], eval_vmp(m, 2, 1, 1e-13).value) < 1e-9);
    }
}

TEST_CASE("non-integer step count is rejected") {
    CHECK_THROWS_AS(recurse_up(make_seed(-1, 2, 1), 2.5), DomainError);
    CHECK_THROWS_AS(recurse_up(make_seed(-1, 2, 1), 0), DomainError);
}

TEST_CASE("consistency across anchors") {
    for (double p : {2.0, 3.0})
        for (double x : {0.5, 1.0, 5.0})
            for (double a : {-0.5, 0.0, 0.25}) {
                const RecursionSeed s = make_seed(a, p, x);
                const RecursionChain c = recurse_up(s, a + 15);
                const bool benign = std::pow(x, p) < 2;
                for (std::size_t i = 0; i < c.values.size(); ++i) {
                    const double m = c.first_m + i;
                    const double want = eval_vmp(m, p, x, 1e-13).value;
                    INFO("p=" << p << " x=" << x << " anchor=" << a << " m=" << m);
                    // forward recursion is unstable for large x^p; the flag must say so
                    if (!c.warn_unstable) CHECK(rel(c.values[i], want) < 1e-6);
                    if (benign) CHECK(rel(c.values[i], want) < 1e-8);
                }
                if (benign) CHECK_FALSE(c.warn_unstable);
            }
}

TEST_CASE("extended recursion stays accurate where double fails") {
    const std::vector<double> v = recurse_up_extended(20, 2, 10);
    REQUIRE(v.size() == 21);  // V_0 .. V_20
    for (int m = 0; m <= 20; ++m) CHECK(rel(v[m], eval_vmp(m, 2, 10, 1e-13).value) < 1e-10);
    const RecursionChain c = recurse_up(make_seed(-1, 2, 10), 20);
    CHECK(c.warn_unstable);
}

TEST_CASE("unrolled step equals iterated recursion") {
    for (double x : {0.4, 1.3})
        for (double p : {2.0, 3.0}) {
            const RecursionChain c = recurse_up(make_seed(-1, p, x), 10, false);
            REQUIRE(c.first_m == 0);
            const std::vector<double>& v0m = c.values;
            for (int m = 1; m <= 10; ++m) {
                std::vector<double> prefix(v0m.begin(), v0m.begin() + m);
                CHECK(rel(unrolled_step(m, p, x, prefix), v0m[m]) < 1e-12);
            }
        }
}

TEST_CASE("averaged potential") {
    CHECK(rel(averaged_potential(1, 2, 2).value, eval_vmp(0, 2, 2, 1e-13).value) < 1e-12);
    CHECK(averaged_potential(3, 1, 5).value == doctest::Approx(1.0).epsilon(1e-13));
    double s = 0;
    for (int m = 0; m < 4; ++m) s += eval_vmp(m, 2, 1, 1e-13).value;
    const AveragedPotential a = averaged_potential(4, 2, 1);
    CHECK(rel(a.value, s / 4) < 1e-11);
    CHECK(rel(a.direct, a.closed_form) < 1e-11);
    CHECK_THROWS_AS(averaged_potential(0, 2, 1), DomainError);
}

TEST_CASE("gamma identity") {
    auto [l1, r1] = gamma_identity_check(1, 2);
    CHECK(l1 == doctest::Approx(std::sqrt(M_PI) / 2).epsilon(1e-14));
    CHECK(rel(l1, r1) < 1e-12);
    auto [l2, r2] = gamma_identity_check(1, 1);
    CHECK(l2 == doctest::Approx(1.0));
    CHECK(r2 == doctest::Approx(1.0));
    for (int m = 1; m <= 30; ++m)
        for (double p : {0.7, 2.0, 3.0}) {
            auto [l, r] = gamma_identity_check(m, p);
            CHECK(rel(l, r) < 1e-12);
        }
}

TEST_CASE("cusp slope of the averaged potential") {
    CHECK(averaged_derivative_at_zero(1, 2) == -2);
    CHECK(averaged_derivative_at_zero(5, 2) == doctest::Approx(-0.4));
    CHECK(averaged_derivative_at_zero(2, 3) == doctest::Approx(-1.5));
    for (int N : {1, 2, 5}) CHECK(std::fabs(averaged_slope_fd(N, 2, 1e-5) + 2.0 / N) < 1e-3);
}

TEST_CASE("averaged potential convex for p = 2, concave for p = 1/2") {
    for (int N : {1, 2, 5, 10})
        for (double x = 0.05; x <= 20; x *= 1.25) {
            const double h = 0.01 * x;
            auto f = [&](double p, double t) { return averaged_potential(N, p, t, 1e-14).value; };
            const double d2 = (f(2, x + h) - 2 * f(2, x) + f(2, x - h)) / (h * h);
            const double c2 = (f(0.5, x + h) - 2 * f(0.5, x) + f(0.5, x - h)) / (h * h);
            INFO("N=" << N << " x=" << x);
            CHECK(d2 >= -1e-8);
            CHECK(c2 <= 1e-8);
        }
}
