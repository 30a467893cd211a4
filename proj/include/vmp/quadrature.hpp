#pragma once

// Adaptive Gauss-Legendre integration of Gamma-weighted integrals
//   (1/Γ(m+1)) ∫_0^∞ u^m e^{-u} φ(u) du
// with a caller-supplied analytic bound for the discarded tail.

#include <functional>

namespace vmp {

struct GammaWeightIntegrand {
    double m = 0;                                // weight exponent, m > -1
    std::function<double(double)> phi;           // algebraic factor
    std::function<double(double)> tail_bound;    // bound on the normalized integral over [U, ∞)
    double scale = 1;                            // length scale on which φ varies near 0
};

struct QuadratureResult {
    double value = 0;
    double abs_err = 0;
    int panels = 0;
    double cutoff = 0;
};

QuadratureResult integrate_gamma_weight(const GammaWeightIntegrand& f, double tol, int max_panels = 20000);

// log of an upper bound for Γ(a, U) / Γ(m+1); needs U > a - 1 when a > 1.
double log_upper_gamma_bound(double a, double U, double m);

}  // namespace vmp
