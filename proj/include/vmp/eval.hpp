#pragma once

// V_m^p(x) = (1/Γ(m+1)) ∫_0^∞ u^m e^{-u} (x^p + u)^{-(p-1)/p} du,
// with V_{-1}^p(x) = x^{1-p}.

#include <string>

namespace vmp {

enum class Method { quadrature, asymptotic, closed_form_inv_p, polynomial_rep, recursion, convention, gamma_ratio };

std::string to_string(Method m);

struct EvalParams {
    double m = 0;
    double p = 2;
    double x = 0;
};

struct EvalResult {
    double value = 0;
    double abs_err_estimate = 0;
    Method method = Method::quadrature;
};

inline constexpr double kDefaultTol = 1e-10;

// Throws DomainError when params violate the domain; see validate_params.
void validate_params(const EvalParams& params);

EvalResult eval_vmp(const EvalParams& params, double tol = kDefaultTol);
inline EvalResult eval_vmp(double m, double p, double x, double tol = kDefaultTol) {
    return eval_vmp(EvalParams{m, p, x}, tol);
}
inline double vmp_value(double m, double p, double x, double tol = kDefaultTol) {
    return eval_vmp(EvalParams{m, p, x}, tol).value;
}

// Forces the quadrature route (x > 0 or m > -1/p).
EvalResult eval_quadrature(const EvalParams& params, double tol = kDefaultTol);

// Γ(m+1/p)/Γ(m+1) = V_m^p(0).
EvalResult eval_vm0(double m, double p);

// V_m^{1/n}(x) as a polynomial in x^{1/n}.
double eval_closed_form_inv_p(double m, int n, double x);

// Optimally truncated large-x series, p > 1.
EvalResult eval_asymptotic(const EvalParams& params, int max_terms);

// Fourier transform of V_m (p = 2) at frequency xi != 0.
EvalResult eval_fourier_transform(double m, double xi, double tol = kDefaultTol);

// n with 1/p = n (n >= 1), or 0 when 1/p is not an integer.
int inverse_integer_exponent(double p);

}  // namespace vmp
