#pragma once

// Exact polynomials in up to three named variables with mpq_class
// coefficients. Zero coefficients are never stored.

#include <gmpxx.h>

#include <array>
#include <map>
#include <string>
#include <vector>

#include <json.hpp>

namespace vmp {

class RationalPoly {
  public:
    static constexpr int kMaxVars = 3;
    using Exponents = std::array<int, kMaxVars>;
    using Terms = std::map<Exponents, mpq_class>;

    RationalPoly() = default;
    explicit RationalPoly(std::vector<std::string> vars);
    RationalPoly(std::vector<std::string> vars, const mpq_class& c);

    static RationalPoly constant(std::vector<std::string> vars, const mpq_class& c);
    static RationalPoly variable(std::vector<std::string> vars, int index);
    static RationalPoly monomial(std::vector<std::string> vars, const Exponents& e,
                                 const mpq_class& c);
    // Accepts integers, rationals a/b, variables, + - * ^ and parentheses.
    // Juxtaposition multiplies: "3 m^2 y", "(m+y)(y-1)".
    static RationalPoly parse(const std::string& text, std::vector<std::string> vars);

    const std::vector<std::string>& vars() const { return vars_; }
    const Terms& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    std::size_t size() const { return terms_.size(); }

    int var_index(const std::string& name) const;
    mpq_class coefficient(const Exponents& e) const;
    void add_term(const Exponents& e, const mpq_class& c);

    int degree(int var) const;
    int total_degree() const;
    // Coefficient of var^power, as a polynomial in the remaining variables.
    RationalPoly coeff_of(int var, int power) const;

    RationalPoly& operator+=(const RationalPoly& o);
    RationalPoly& operator-=(const RationalPoly& o);
    RationalPoly& operator*=(const RationalPoly& o);
    RationalPoly& operator*=(const mpq_class& c);
    RationalPoly operator-() const;

    friend RationalPoly operator+(RationalPoly a, const RationalPoly& b) { return a += b; }
    friend RationalPoly operator-(RationalPoly a, const RationalPoly& b) { return a -= b; }
    friend RationalPoly operator*(const RationalPoly& a, const RationalPoly& b);
    friend RationalPoly operator*(RationalPoly a, const mpq_class& c) { return a *= c; }
    friend RationalPoly operator*(const mpq_class& c, RationalPoly a) { return a *= c; }
    friend bool operator==(const RationalPoly& a, const RationalPoly& b);
    friend bool operator!=(const RationalPoly& a, const RationalPoly& b) { return !(a == b); }

    RationalPoly pow(int n) const;
    RationalPoly derivative(int var) const;
    // Replace variable var by the polynomial value (same variable set).
    RationalPoly substitute(int var, const RationalPoly& value) const;
    RationalPoly shift(int var, const mpq_class& c) const;
    // Fix variable var to an exact number.
    RationalPoly evaluate_at(int var, const mpq_class& v) const;

    mpq_class evaluate_exact(const std::vector<mpq_class>& point) const;
    double evaluate(const std::vector<double>& point) const;
    long double evaluate_ld(const std::vector<long double>& point) const;
    // Dense coefficients in var (ascending) when var is the only variable used.
    std::vector<mpq_class> univariate(int var) const;

    // Positive rational c with this = c * primitive integer polynomial.
    mpq_class content() const;
    bool all_coeffs_nonneg() const;

    std::string to_string() const;
    nlohmann::ordered_json to_json() const;

  private:
    void check_compatible(const RationalPoly& o);
    std::vector<std::string> vars_;
    Terms terms_;
};

using RationalBiPoly = RationalPoly;

}  // namespace vmp
