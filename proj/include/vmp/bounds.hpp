#pragma once

// Inequality families for V_m^p and grid suites that check them.

#include <optional>
#include <vector>

#include "vmp/eval.hpp"
#include "vmp/report.hpp"

namespace vmp {

// k / ((k-1)x + sqrt(x^2+k))
double g_k(double k, double x);
// k / ((k-1)x + sqrt(x^2+m+k))
double g_k_m(double k, double m, double x);
// k y / ((k-1)y - m + sqrt((y+m)^2 + k y)); the limit 2m/(2m+1) at y = 0.
double G_k_m(double k, double m, double y);
// General-p form; limit pm/(pm+p-1) at xp = 0.
double G_k_m_p(double k, double m, double p, double xp);
// d/dy G_k^{m,p}(y), analytic.
double G_k_m_p_derivative(double k, double m, double p, double y);
long double G_k_m_p_ld(long double k, long double m, long double p, long double y);
long double G_k_m_p_derivative_ld(long double k, long double m, long double p, long double y);

struct JensenBounds {
    double lower = 0;
    std::optional<double> upper;
};
JensenBounds jensen_bounds(double m, double p, double x);

struct BoydBounds {
    double lower = 0;
    double upper = 0;
};
BoydBounds boyd_bounds(double m);

double mascioni_upper_v0p(double p, double x);

EvalResult ratio_with_error(double m, double p, double x, double tol = 1e-13);
double ratio(double m, double p, double x, double tol = 1e-13);

// g_pi(x) <= V_0(x) < g_4(x)
Report verify_v0_bounds(const std::vector<double>& grid, double tol = kDefaultTol);
// G_8^{m-1}(x^2) < R_m(x) < G_4^m(x^2), m = 1..m_max
Report verify_ratio_bounds(int m_max, const std::vector<double>& grid, double tol = 1e-13);
// Second difference of 1/V_m^p and, for p = 2, the quadratic criterion at R_m.
Report verify_convexity_reciprocal(int m, double p, const std::vector<double>& grid, double tol = 1e-13);
// R_{m+1}^p nondecreasing along the grid.
Report verify_ratio_monotone(int m, const std::vector<double>& grid, double p = 2, double tol = 1e-13);
Report verify_jensen(const std::vector<double>& ms, const std::vector<double>& ps, const std::vector<double>& grid);
Report verify_boyd(const std::vector<double>& ms);
Report verify_mascioni(const std::vector<double>& ps, const std::vector<double>& grid);

// First grid point where g_k(x) < V_0(x), i.e. g_k is not an upper bound.
std::optional<double> find_upper_bound_failure(double k, const std::vector<double>& grid);
// First grid point where g_k(x) > V_0(x), i.e. g_k is not a lower bound.
std::optional<double> find_lower_bound_failure(double k, const std::vector<double>& grid);

// 1/V_m(x+y) <= 1/V_m(x) + 1/V_m(y) over grid x grid. Non-integer m is informational.
Report verify_triangle(double m, const std::vector<double>& grid, double p = 2);

// Coefficients a_j of V_m^p(x) = x^{1-p} sum_j a_j x^{-jp}.
std::vector<double> asymptotic_coeffs(double m, double p, int n);
// Coefficients of R_m^p(x) = V_m/V_{m-1} in powers of x^{-p}, by series division.
std::vector<double> ratio_asymptotic_coeffs(double m, double p, int n);
// x^{(n+1)p-1} |V_m^p(x) - first n terms|
double asymptotic_truncation_scaled(double m, double p, double x, int n_terms);
// y^3 |R_m(sqrt y) - (1 - 1/(2y) + (4m+6)/(8y^2))|
double ratio_expansion_scaled_error(int m, double y);

// Direct checks for R_1, R_2, R_3 against G_8^{m-1}.
double h1(double x);
double h2(double x);
double h3(double x);
// Root of 9x + 14x^3 + (2x^2-1) sqrt(8+x^2).
double crossover_x0();
// Point where g_4 = h1 beyond x0.
double crossover_x1();
Report verify_r123(const std::vector<double>& grid);

// k with g_k^m(0) = V_m(0). Exploratory.
double search_gkm_index(double m);

}  // namespace vmp
