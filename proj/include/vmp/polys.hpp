#pragma once

// P_m^p, Q_m^p and tilde-P_m^p with s = 1/p kept symbolic.

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "vmp/rational_poly.hpp"

namespace vmp {

enum class PolyFamily { P, Q, tildeP };

std::string to_string(PolyFamily f);

struct PolyFamilyEntry {
    int m = 0;
    PolyFamily family = PolyFamily::P;
    RationalPoly poly;  // variables (y, s), or (z, s) for tildeP
};

inline const std::vector<std::string>& ys_vars() {
    static const std::vector<std::string> v{"y", "s"};
    return v;
}
inline const std::vector<std::string>& zs_vars() {
    static const std::vector<std::string> v{"z", "s"};
    return v;
}

PolyFamilyEntry build_P(int m);
PolyFamilyEntry build_Q(int m);
PolyFamilyEntry build_tildeP(int m);
// Entries 0..m_max.
std::vector<PolyFamilyEntry> build_family(PolyFamily f, int m_max);

// s as the exact rational 1/p (p taken as its binary double value).
mpq_class s_of_p(double p);
// Numeric coefficients in y (ascending) at s = 1/p.
std::vector<mpq_class> coeffs_at(const RationalPoly& poly, double p);

std::vector<double> explicit_P_coeffs(int m, double p);

double eval_via_polynomials(double m, double p, double x);
// Integer m, MPFR evaluation of P_m(y) V_0 + x Q_{m-1}(y).
double eval_via_polynomials_extended(int m, double p, double x);

struct IdentityCheck {
    bool ok = true;
    std::string detail;
    explicit operator bool() const { return ok; }
};

IdentityCheck derivative_identities_check(int m);
RationalPoly ode_residual_check(int m, double p = 2);
IdentityCheck sum_identity_check(int m);

// {P_m(y), (1/(m B(m,1/p))) e^{-y} 1F1(1-1/p, 1-1/p-m, y)}
std::pair<double, double> hypergeometric_check(int m, double p, double y);
// Σ |b_k| y^k, the magnitude scale of P_m at y.
double polynomial_term_scale(int m, double p, double y);

// Kummer series, capped at max_terms.
double hyp1f1_series(double a, double b, double y, int max_terms = 200);

// Odd m: the real root of tildeP_m in [-m+1, 0]. Even m: none (throws BracketError if a sign change shows up).
std::optional<double> tildeP_roots(int m, double p);

// Sign changes of P_m^p on y >= 0 (grid scan plus endpoint signs).
int count_nonnegative_roots_P(int m, double p);

}  // namespace vmp
