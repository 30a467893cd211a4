#include <doctest.h>

#include <random>

#include <stdexcept>

#include "vmp/errors.hpp"
#include "vmp/rational_poly.hpp"

using namespace vmp;

namespace {

const std::vector<std::string> YM{"y", "m"};

RationalPoly random_poly(std::mt19937_64& rng, const std::vector<std::string>& vars, int deg) {
    std::uniform_int_distribution<int> c(-9, 9), d(1, 5), e(0, deg);
    RationalPoly p(vars);
    for (int t = 0; t < 5; ++t) {
        RationalPoly::Exponents ex{};
        for (std::size_t i = 0; i < vars.size(); ++i) ex[i] = e(rng);
        p.add_term(ex, mpq_class(c(rng), d(rng)));
    }
    return p;
}

}  // namespace

TEST_CASE("parse and print") {
    const RationalPoly p = RationalPoly::parse("3m^2y - (y+m)(y-1) + 1/2", YM);
    const RationalPoly y = RationalPoly::variable(YM, 0), m = RationalPoly::variable(YM, 1);
    const RationalPoly want = mpq_class(3) * m.pow(2) * y - (y + m) * (y - RationalPoly::constant(YM, 1)) +
                              RationalPoly::constant(YM, mpq_class(1, 2));
    CHECK(p == want);
    CHECK(RationalPoly::parse(p.to_string(), YM) == p);
    CHECK(RationalPoly::parse("my", YM) == m * y);
    CHECK(RationalPoly::parse("4(y+m)^2", YM) == mpq_class(4) * (y + m).pow(2));
    CHECK_THROWS_AS(RationalPoly::parse("3x", YM), std::invalid_argument);
    CHECK_THROWS_AS(RationalPoly::parse("(y+m", YM), std::invalid_argument);
}

TEST_CASE("no stored zeros") {
    const RationalPoly y = RationalPoly::variable(YM, 0);
    const RationalPoly z = y - y;
    CHECK(z.is_zero());
    CHECK(z.size() == 0);
    CHECK((y * RationalPoly::constant(YM, 0)).is_zero());
}

TEST_CASE("ring laws on random inputs") {
    std::mt19937_64 rng(11);
    for (int i = 0; i < 100; ++i) {
        const RationalPoly a = random_poly(rng, YM, 3), b = random_poly(rng, YM, 3), c = random_poly(rng, YM, 3);
        CHECK((a * b) * c == a * (b * c));
        CHECK(a * (b + c) == a * b + a * c);
        CHECK(a + b == b + a);
        CHECK(a * b == b * a);
        CHECK((a - a).is_zero());
    }
}

TEST_CASE("derivative rules") {
    std::mt19937_64 rng(12);
    for (int i = 0; i < 50; ++i) {
        const RationalPoly a = random_poly(rng, YM, 4), b = random_poly(rng, YM, 4);
        CHECK((a * b).derivative(0) == a.derivative(0) * b + a * b.derivative(0));
        CHECK((a + b).derivative(1) == a.derivative(1) + b.derivative(1));
    }
}

TEST_CASE("substitution, shift and evaluation") {
    const RationalPoly p = RationalPoly::parse("m^2 - 4m + y", YM);
    const RationalPoly s = p.shift(1, 4);  // m -> m + 4
    CHECK(s == RationalPoly::parse("m^2 + 4m + y", YM));
    CHECK(p.evaluate_exact({1, 2}) == -3);
    CHECK(p.evaluate({1.5, 2.0}) == doctest::Approx(-2.5));
    CHECK(p.evaluate_at(0, 0) == RationalPoly::parse("m^2-4m", YM));
    CHECK(p.substitute(1, RationalPoly::parse("y+1", YM)) == RationalPoly::parse("y^2 - y - 3", YM));
    CHECK(p.degree(1) == 2);
    CHECK(p.total_degree() == 2);
    CHECK(p.coeff_of(1, 1) == RationalPoly::constant(YM, -4));
}

TEST_CASE("coefficient sign and content") {
    CHECK(RationalPoly::parse("2y + 4m^2", YM).all_coeffs_nonneg());
    CHECK_FALSE(RationalPoly::parse("2y - 4m^2", YM).all_coeffs_nonneg());
    CHECK(RationalPoly::parse("6y + 4m^2", YM).content() == 2);
}

TEST_CASE("json dump uses exact strings") {
    const RationalPoly p = RationalPoly::parse("1/3 y^2 - 7/2", YM);
    const auto j = p.to_json();
    REQUIRE(j["terms"].size() == 2);
    bool third = false, half = false;
    for (const auto& t : j["terms"]) {
        third = third || (t["num"] == "1" && t["den"] == "3");
        half = half || (t["num"] == "-7" && t["den"] == "2");
    }
    CHECK(third);
    CHECK(half);
}

TEST_CASE("incompatible variables are rejected") {
    const RationalPoly a = RationalPoly::variable({"y", "m"}, 0);
    const RationalPoly b = RationalPoly::variable({"y", "s"}, 1);
    CHECK_THROWS_AS(a + b, std::invalid_argument);
}
