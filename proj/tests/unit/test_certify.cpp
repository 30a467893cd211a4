#include <doctest.h>

#include <cmath>
#include <random>

#include "vmp/bounds.hpp"
#include "vmp/certify.hpp"
#include "vmp/errors.hpp"
#include "vmp/extension.hpp"

using namespace vmp;

namespace {

const std::vector<std::string> YM{"y", "m"};
RationalPoly ym(const std::string& s) { return RationalPoly::parse(s, YM); }

RationalPoly random_poly(std::mt19937_64& rng) {
    std::uniform_int_distribution<int> c(-6, 6), e(0, 2);
    RationalPoly p(YM);
    for (int t = 0; t < 4; ++t) p.add_term({e(rng), e(rng), 0}, mpq_class(c(rng), 1 + e(rng)));
    return p;
}

}  // namespace

TEST_CASE("extension ring axioms") {
    const RationalPoly q = ym("(y+m)^2 + 4y");
    std::mt19937_64 rng(2024);
    auto el = [&] { return ExtensionElement(random_poly(rng), random_poly(rng), q); };
    for (int i = 0; i < 100; ++i) {
        const ExtensionElement u = el(), v = el(), w = el();
        CHECK((u * v) * w == u * (v * w));
        CHECK(u * (v + w) == u * v + u * w);
        CHECK(u * v == v * u);
        CHECK((u * u.conj()).b().is_zero());
        CHECK((u * u.conj()).a() == u.a() * u.a() - u.b() * u.b() * q);
        CHECK(u.norm() == u.a() * u.a() - u.b() * u.b() * q);
    }
}

TEST_CASE("extension derivative steps") {
    const RationalPoly q = ym("(y+m)^2 + 4y");
    const ExtensionElement B = ExtensionElement::root(q);
    CHECK((B * B).a() == q);
    CHECK((B * B).b().is_zero());
    // B d/dy B = q'/2
    const ExtensionElement d = B.derivative_times_B(0);
    CHECK(d.a() == mpq_class(1, 2) * q.derivative(0));
    CHECK(d.b().is_zero());
    CHECK(B.derivative_times_2B(0) == mpq_class(2) * d);
    const std::vector<long double> pt{1.5L, 2.0L};
    CHECK(static_cast<double>(B.evaluate(pt)) == doctest::Approx(std::sqrt(3.5 * 3.5 + 6)).epsilon(1e-15));
    CHECK(B.with_root_value(ym("m")) == ym("m"));
}

TEST_CASE("shift-and-check certificates") {
    CHECK(positivity_for_m_ge(ym("m - 4"), 4).ok());
    const PositivityCertificate c = positivity_for_m_ge(ym("m - 4"), 0);
    CHECK(c.status == PositivityCertificate::Status::sign_indefinite);
    REQUIRE(c.witness);
    CHECK(c.witness_coeff == -4);
    CHECK_FALSE(positivity_for_m_ge(ym("0"), 0).ok());
    CHECK(positivity_for_m_ge(ym("y^2 - 2y m + m^2 + m"), 0).status == PositivityCertificate::Status::sign_indefinite);
    CHECK(to_string(PositivityCertificate::Status::all_coeffs_nonneg) == "all_coeffs_nonneg");
}

TEST_CASE("k = 4, p = 2 chain") {
    const ChainResult r = build_chain_k4_p2();
    CHECK(r.ok());
    const RationalPoly& L = r.poly("L");
    CHECK(L.coefficient({8, 0, 0}) / 4 == 101250);
    CHECK(L.coefficient({0, 2, 0}) / 4 == 14400);
    CHECK(r.step("H").at_zero == ym("12m(2+5m+2m^2)"));
    for (const char* n : {"F", "D", "G"}) CHECK(r.step(n).at_zero.is_zero());
    CHECK(positivity_for_m_ge(L, 1).ok());
    for (const char* n : {"f1", "f2", "d1", "d2", "g1", "g2", "h1", "h2", "l1", "l2"}) CHECK_NOTHROW(r.poly(n));
}

TEST_CASE("k = 8, p = 2 chain") {
    const ChainResult r = build_chain_k8_p2();
    CHECK(r.ok());
    const RationalPoly& L = r.poly("L");
    CHECK(L.evaluate_at(0, 0).is_zero());
    const RationalPoly lp0 = L.derivative(0).evaluate_at(0, 0);
    CHECK(lp0 == ym("192m^2(m-4)(1+2m)(480+64m+90m^2+33m^3)"));
    for (int m : {1, 2, 3}) CHECK(lp0.evaluate_exact({0, m}) < 0);
    CHECK(lp0.evaluate_exact({0, 4}) == 0);
    CHECK(lp0.evaluate_exact({0, 5}) > 0);
    CHECK(positivity_for_m_ge(r.poly("Lpp"), 4).ok());
}

TEST_CASE("generic k factor") {
    const RationalPoly f = optimality_factor_generic_k();
    CHECK(f == RationalPoly::parse("24k^3m(1+2m)(km-6m-k)", {"y", "m", "k"}));
    CHECK(f.evaluate_exact({0, 2, 12}) == 0);
    CHECK(f.evaluate_exact({0, 4, 8}) == 0);
    CHECK(f.evaluate_exact({0, 1, 8}) < 0);
    CHECK(f.evaluate_exact({0, 2, 13}) > 0);
}

TEST_CASE("p = 3, k = 4 chain") {
    const ChainResult r = build_chain_p3_k4();
    CHECK(r.ok());
    CHECK(r.poly("l1").coefficient({4, 0, 0}) / 3 == 16875);
    CHECK(r.poly("l2").coefficient({5, 0, 0}) / 27 == 5625);
    CHECK(r.poly("l1").coefficient({0, 0, 0}) / 3 == 5120);
    CHECK(positivity_for_m_ge(r.poly("L"), 1).ok());
    // one negative coefficient before the shift
    CHECK_FALSE(r.poly("L").all_coeffs_nonneg());
}

TEST_CASE("chain dispatch and JSON") {
    CHECK_THROWS_AS(build_chain("k5p2"), DomainError);
    const auto j = build_chain("generic_k").to_json();
    CHECK(j["chain"] == "generic_k");
    CHECK(j["ok"] == true);
    CHECK(j["steps"].size() == 4);
    CHECK(j["steps"][1]["from"].get<std::string>().find("2B") != std::string::npos);
}

TEST_CASE("printed tables parse") {
    for (const char* c : {"k4p2", "k8p2", "generic_k", "p3k4"}) CHECK_FALSE(printed_polynomials(c).empty());
    CHECK_THROWS_AS(printed_polynomials("nope"), DomainError);
}

TEST_CASE("lemma quantity") {
    CHECK_THROWS_AS(lemma_E(4, 0.5, 2, 1), DomainError);
    // finite-difference check of the definition
    for (double y : {0.3, 2.0}) {
        const double h = 1e-6;
        const double dG = (G_k_m_p(4, 2, 2, y + h) - G_k_m_p(4, 2, 2, y - h)) / (2 * h);
        const double e = G_k_m_p(4, 2, 2, y) / G_k_m_p(4, 1, 2, y) - 1 - dG;
        CHECK(static_cast<double>(lemma_E(4, 2, 2, y)) == doctest::Approx(e).epsilon(1e-6));
    }
}

TEST_CASE("lemma sweeps") {
    const auto ys = geometric_grid(1e-4, 1e4, 2001);
    CHECK(numeric_lemma_sweep(4, 2, {1, 2, 3, 4, 5, 6, 7, 8, 9, 10}, ys).violations.empty());
    const LemmaSweep k8 = numeric_lemma_sweep(8, 2, {1, 2, 3, 4, 5, 6}, ys);
    CHECK(k8.claimed_sign == -1);
    for (double m : {1, 2, 3}) CHECK(k8.violated(m));
    for (double m : {4, 5, 6}) CHECK_FALSE(k8.violated(m));
    CHECK(numeric_lemma_sweep(4, 10, {1}, ys).violated(1));
    CHECK_FALSE(numeric_lemma_sweep(4, 9, {1}, ys).violated(1));
    CHECK(numeric_lemma_sweep(4, 14, {2}, ys).violated(2));
    CHECK_FALSE(numeric_lemma_sweep(4, 13, {2}, ys).violated(2));
    CHECK(numeric_lemma_sweep(4, 18, {3}, ys).violated(3));
    CHECK_FALSE(numeric_lemma_sweep(4, 17, {3}, ys).violated(3));
    CHECK(numeric_lemma_sweep(4, 4, {1, 2, 3}, ys).violations.empty());
}
