#pragma once

// Unit-step recursion in m:
//   V_m = (1/m)[(m-1+1/p-x^p) V_{m-1} + x^p V_{m-2}]

#include <utility>
#include <vector>

namespace vmp {

// Holds V at m0 and m0 - 1, with m0 in [0, 1).
struct RecursionSeed {
    double m0 = 0;
    double v_m0 = 0;
    double v_m0_minus_1 = 0;
    double p = 2;
    double x = 1;
};

struct RecursionChain {
    std::vector<double> values;  // V_{m0}, V_{m0+1}, ..., V_target
    double first_m = 0;
    bool warn_unstable = false;
    double final_rel_deviation = 0;  // against eval_vmp at the last index
};

// anchor in [-1, 1): the lower index of the seed pair.
RecursionSeed make_seed(double anchor, double p, double x, double tol = 1e-13);

RecursionChain recurse_up(const RecursionSeed& seed, double target_m, bool validate = true);

// Integer m: V_m from V_{m-1}, V_0..V_{m-2} and V_{-1} in one shot.
double unrolled_step(int m, double p, double x, const std::vector<double>& v_0_to_m_minus_1);

// V_0..V_{m_max} at integer indices with MPFR arithmetic seeded by an
// extended-precision V_0; result rounded to double.
std::vector<double> recurse_up_extended(int m_max, double p, double x);

struct AveragedPotential {
    double direct = 0;
    double closed_form = 0;
    double direct_err = 0;
    double closed_form_err = 0;
    double value = 0;  // closed form
};

AveragedPotential averaged_potential(int N, double p, double x, double tol = 1e-13);

std::pair<double, double> gamma_identity_check(int m, double p);

double averaged_derivative_at_zero(int N, double p);
// One-sided difference (V_av(h) - V_av(0)) / h.
double averaged_slope_fd(int N, double p, double h);

}  // namespace vmp
