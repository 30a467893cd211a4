#include <doctest.h>

#include <cmath>

#include "vmp/errors.hpp"
#include "vmp/eval.hpp"
#include "vmp/polys.hpp"
#include "vmp/recursion.hpp"

using namespace vmp;

namespace {

RationalPoly ys(const std::string& s) { return RationalPoly::parse(s, ys_vars()); }
RationalPoly zs(const std::string& s) { return RationalPoly::parse(s, zs_vars()); }
double rel(double a, double b) { return std::fabs(a - b) / std::max(std::fabs(b), 1e-300); }

mpq_class factorial(int n) {
    mpz_class f = 1;
    for (int i = 2; i <= n; ++i) f *= i;
    return mpq_class(f);
}

}  // namespace

TEST_CASE("first members") {
    CHECK(build_P(0).poly == ys("1"));
    CHECK(build_P(1).poly == ys("s - y"));
    CHECK(build_P(2).poly == ys("1/2((y-s)^2 + s)"));
    CHECK(build_Q(0).poly == ys("1"));
    CHECK(build_Q(1).poly == ys("1/2(1 + s - y)"));
    CHECK(build_tildeP(1).poly == zs("z"));
    CHECK(build_tildeP(2).poly == zs("1/2(z^2 + s)"));
}

TEST_CASE("P_m(0) is a gamma ratio") {
    // P_5 at (y=0, s=1/2) = Γ(5+1/2)/(Γ(6)Γ(1/2))
    const mpq_class v = build_P(5).poly.evaluate_exact({0, mpq_class(1, 2)});
    CHECK(v.get_d() == doctest::Approx(std::tgamma(5.5) / (std::tgamma(6) * std::tgamma(0.5))).epsilon(1e-14));
    // Q_3 at (0, 1/3): the recursion gives Γ(m+1+s)/(Γ(m+2)Γ(1+s))
    const mpq_class q = build_Q(3).poly.evaluate_exact({0, mpq_class(1, 3)});
    const double s = 1.0 / 3;
    CHECK(q.get_d() == doctest::Approx(std::tgamma(4 + s) / (std::tgamma(5) * std::tgamma(1 + s))).epsilon(1e-14));
}

TEST_CASE("tildeP is P after z = s - y") {
    for (int m : {3, 4, 7}) {
        const RationalPoly t = build_tildeP(m).poly;
        // rename (z, s) -> (y, s) then substitute y -> s - y
        RationalPoly as_ys(ys_vars());
        for (const auto& [e, c] : t.terms()) as_ys.add_term(e, c);
        CHECK(as_ys.substitute(0, ys("s - y")) == build_P(m).poly);
    }
}

TEST_CASE("exact identities up to m = 25") {
    const auto P = build_family(PolyFamily::P, 25);
    const auto Q = build_family(PolyFamily::Q, 25);
    const auto T = build_family(PolyFamily::tildeP, 25);
    for (int m = 1; m <= 25; ++m) {
        INFO("m=" << m);
        const IdentityCheck d = derivative_identities_check(m);
        CHECK_MESSAGE(d.ok, d.detail);
        // Appell: d/dy[(-1)^m P_m] = (-1)^{m-1} P_{m-1}
        const mpq_class sg = m % 2 ? -1 : 1;
        CHECK(sg * P[m].poly.derivative(0) == -sg * P[m - 1].poly);
        CHECK(ode_residual_check(m).is_zero());
        const IdentityCheck si = sum_identity_check(m);
        CHECK_MESSAGE(si.ok, si.detail);
    }
    for (int m = 0; m <= 25; ++m) {
        INFO("m=" << m);
        const mpq_class sg = m % 2 ? -1 : 1;
        CHECK(P[m].poly.degree(0) == m);
        CHECK(Q[m].poly.degree(0) == m);
        CHECK(P[m].poly.coefficient({m, 0, 0}) == sg / factorial(m));
        CHECK(Q[m].poly.coefficient({m, 0, 0}) == sg / factorial(m + 1));
        CHECK(T[m].poly.all_coeffs_nonneg());
        CHECK_FALSE(T[m].poly.is_zero());
    }
}

TEST_CASE("explicit coefficients match the exact family") {
    const auto b1 = explicit_P_coeffs(1, 2);
    REQUIRE(b1.size() == 2);
    CHECK(b1[0] == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(b1[1] == doctest::Approx(-1.0).epsilon(1e-14));
    for (int m = 1; m <= 12; ++m)
        for (double p : {2.0, 3.0, 0.75}) {
            const auto b = explicit_P_coeffs(m, p);
            const auto c = coeffs_at(build_P(m).poly, p);
            REQUIRE(b.size() == c.size());
            for (std::size_t k = 0; k < b.size(); ++k) CHECK(rel(b[k], c[k].get_d()) < 1e-12);
        }
}

TEST_CASE("polynomial representation of V") {
    const double v0 = eval_vmp(0, 2, 1, 1e-14).value;
    CHECK(rel(eval_via_polynomials(1, 2, 1), 1 - v0 / 2) < 1e-13);
    CHECK(rel(eval_via_polynomials(1, 2, 1), eval_vmp(1, 2, 1, 1e-13).value) < 1e-10);
    for (double x : {0.5, 3.0}) CHECK(eval_via_polynomials(2, 1, x) == doctest::Approx(1.0).epsilon(1e-14));
    const RecursionChain c = recurse_up(make_seed(-1, 2, 3), 6, false);
    CHECK(rel(eval_via_polynomials(6, 2, 3), c.values.back()) < 1e-9);
    // fractional m through the anchor pair
    for (double m : {1.5, 2.25, 4.75})
        for (double x : {0.3, 1.0}) CHECK(rel(eval_via_polynomials(m, 2, x), eval_vmp(m, 2, x, 1e-13).value) < 1e-9);
    for (int m = 1; m <= 20; ++m)
        for (double x : {0.5, 10.0, 50.0})
            CHECK(rel(eval_via_polynomials_extended(m, 2, x), eval_vmp(m, 2, x, 1e-13).value) < 1e-9);
}

TEST_CASE("hypergeometric form") {
    auto [l, r] = hypergeometric_check(1, 2, 0);
    CHECK(l == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(r == doctest::Approx(0.5).epsilon(1e-15));
    for (auto [m, p, y] : std::vector<std::tuple<int, double, double>>{{2, 3, 1}, {1, 2, 3}, {5, 2.5, 0.5}}) {
        auto [a, b] = hypergeometric_check(m, p, y);
        CHECK(std::fabs(a - b) <= 1e-9 * std::max(std::fabs(a), polynomial_term_scale(m, p, y)));
    }
    CHECK_THROWS_AS(hypergeometric_check(2, 0.5, 1), DomainError);
    CHECK_THROWS_AS(hyp1f1_series(1, -0.5, 200, 200), SeriesBudgetError);
}

TEST_CASE("tildeP roots") {
    CHECK(*tildeP_roots(1, 2) == 0.0);
    const auto z3 = tildeP_roots(3, 2);
    REQUIRE(z3);
    CHECK(*z3 == doctest::Approx(-0.56).epsilon(0.01));
    // (z^3 + 1.5 z + 1)/6 vanishes there
    CHECK(std::fabs(*z3 * *z3 * *z3 + 1.5 * *z3 + 1) < 1e-11);
    CHECK_FALSE(tildeP_roots(4, 2));
    for (double p : {2.0, 3.0}) {
        double prev = 1;
        for (int m = 1; m <= 15; m += 2) {
            const double z = *tildeP_roots(m, p);
            CHECK(z < prev);
            CHECK(z >= -m + 1);
            CHECK(z <= 0);
            prev = z;
        }
    }
}

TEST_CASE("one nonnegative root for odd m") {
    for (int m = 1; m <= 15; m += 2)
        for (double p : {2.0, 3.0}) CHECK(count_nonnegative_roots_P(m, p) == 1);
}
