#include "vmp/eval.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "vmp/errors.hpp"
#include "vmp/quadrature.hpp"

namespace vmp {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

std::string describe(const EvalParams& p) {
    std::ostringstream os;
    os.precision(17);
    os << "(m=" << p.m << ", p=" << p.p << ", x=" << p.x << ")";
    return os.str();
}

}  // namespace

std::string to_string(Method m) {
    switch (m) {
        case Method::quadrature: return "quadrature";
        case Method::asymptotic: return "asymptotic";
        case Method::closed_form_inv_p: return "closed_form_inv_p";
        case Method::polynomial_rep: return "polynomial_rep";
        case Method::recursion: return "recursion";
        case Method::convention: return "convention";
        case Method::gamma_ratio: return "gamma_ratio";
    }
    return "unknown";
}

int inverse_integer_exponent(double p) {
    if (!(p > 0) || p > 1) return 0;
    const double inv = 1 / p;
    const double n = std::round(inv);
    if (n < 1 || n > 1e6) return 0;
    return std::fabs(n * p - 1) <= 4 * kEps ? static_cast<int>(n) : 0;
}

void validate_params(const EvalParams& prm) {
    if (!std::isfinite(prm.m) || !std::isfinite(prm.p) || !std::isfinite(prm.x))
        throw DomainError("non-finite parameter " + describe(prm));
    if (!(prm.p > 0)) throw DomainError("p must be positive " + describe(prm));
    if (prm.m < -1) throw DomainError("m must be >= -1 " + describe(prm));
    if (prm.x < 0) throw DomainError("x must be >= 0 " + describe(prm));
    if (prm.x == 0 && prm.m <= -1 / prm.p) throw DomainError("x = 0 requires m > -1/p " + describe(prm));
}

EvalResult eval_vm0(double m, double p) {
    if (!(p > 0)) throw DomainError("eval_vm0: p must be positive");
    const double a = m + 1 / p, b = m + 1;
    if (!(a > 0) || !(b > 0)) throw DomainError("eval_vm0: requires m > -1/p and m > -1");
    EvalResult r;
    r.method = Method::gamma_ratio;
    if (a < 170 && b < 170) {
        r.value = std::tgamma(a) / std::tgamma(b);
        r.abs_err_estimate = 10 * kEps * r.value;
    } else {
        const double la = std::lgamma(a), lb = std::lgamma(b);
        r.value = std::exp(la - lb);
        r.abs_err_estimate = (10 + 4 * (std::fabs(la) + std::fabs(lb))) * kEps * r.value;
    }
    return r;
}

double eval_closed_form_inv_p(double m, int n, double x) {
    if (n < 2) throw DomainError("eval_closed_form_inv_p: n must be >= 2");
    if (!(m > -1)) throw DomainError("eval_closed_form_inv_p: m must exceed -1");
    if (x < 0) throw DomainError("eval_closed_form_inv_p: x must be >= 0");
    // coefficient of t^k: C(n-1,k) Γ(m+n-k)/Γ(m+1) = C(n-1,k) Π_{i=1}^{n-k-1} (m+i)
    const double t = std::pow(x, 1.0 / n);
    double acc = 0;
    double binom = 1;  // C(n-1, n-1)
    for (int k = n - 1; k >= 0; --k) {
        double ratio = 1;
        for (int i = 1; i <= n - k - 1; ++i) ratio *= m + i;
        acc = acc * t + binom * ratio;
        binom = binom * k / (n - k);  // C(n-1, k-1)
    }
    return acc;
}

EvalResult eval_asymptotic(const EvalParams& prm, int max_terms) {
    validate_params(prm);
    if (!(prm.p > 1)) throw DomainError("eval_asymptotic: requires p > 1");
    if (!(prm.x > 0)) throw AsymptoticRegimeError("eval_asymptotic: requires x > 0");
    if (max_terms < 1) throw DomainError("eval_asymptotic: max_terms must be >= 1");
    const double c = (prm.p - 1) / prm.p;
    const double y = std::pow(prm.x, prm.p);
    const double lead = std::pow(prm.x, 1 - prm.p);
    // t_{j+1}/t_j = (-c-j)/(j+1) * (m+1+j) / y
    auto next = [&](double t, int j) { return t * (-c - j) / (j + 1) * (prm.m + 1 + j) / y; };
    double sum = lead, t = lead;
    int j = 0;
    double t_next = next(t, 0);
    if (std::fabs(t_next) > std::fabs(lead))
        throw AsymptoticRegimeError("eval_asymptotic: first correction exceeds leading term " + describe(prm));
    while (j + 1 < max_terms && t_next != 0 && std::fabs(t_next) <= std::fabs(t)) {
        t = t_next;
        ++j;
        sum += t;
        t_next = next(t, j);
    }
    EvalResult r;
    r.value = sum;
    r.abs_err_estimate = std::fabs(t_next) + 10 * kEps * std::fabs(sum);
    r.method = Method::asymptotic;
    return r;
}

EvalResult eval_quadrature(const EvalParams& prm, double tol) {
    validate_params(prm);
    if (!(tol > 0)) throw DomainError("tol must be positive");
    if (prm.m == -1) throw DomainError("eval_quadrature: m = -1 has no integral form");
    const double p = prm.p, m = prm.m;
    const double xp = std::pow(prm.x, p);
    const double c = (p - 1) / p;
    GammaWeightIntegrand f;
    f.m = m;
    f.scale = xp > 0 ? xp : 1;
    if (c >= 0) {
        f.phi = [xp, c](double u) { return std::pow(xp + u, -c); };
        f.tail_bound = [xp, c, m](double U) {
            return std::exp(log_upper_gamma_bound(m + 1, U, m)) * std::pow(xp + U, -c);
        };
    } else {
        const double e = -c;
        f.phi = [xp, e](double u) { return std::pow(xp + u, e); };
        f.tail_bound = [xp, e, m](double U) {
            if (U < xp) return std::numeric_limits<double>::infinity();
            return std::exp(log_upper_gamma_bound(m + 1 + e, U, m) + e * std::log(2.0));
        };
    }
    QuadratureResult q = integrate_gamma_weight(f, tol);
    EvalResult r;
    r.value = q.value;
    r.abs_err_estimate = q.abs_err;
    r.method = Method::quadrature;
    return r;
}

EvalResult eval_vmp(const EvalParams& prm, double tol) {
    validate_params(prm);
    if (!(tol > 0)) throw DomainError("tol must be positive");
    const double m = prm.m, p = prm.p, x = prm.x;
    if (m == -1) {
        EvalResult r;
        r.value = p == 1 ? 1.0 : std::pow(x, 1 - p);
        r.abs_err_estimate = 2 * kEps * r.value;
        r.method = Method::convention;
        return r;
    }
    if (p == 1) return EvalResult{1.0, 0.0, Method::closed_form_inv_p};
    if (x == 0) return eval_vm0(m, p);
    if (int n = inverse_integer_exponent(p); n >= 2) {
        EvalResult r;
        r.value = eval_closed_form_inv_p(m, n, x);
        r.abs_err_estimate = (10 + 4 * n) * kEps * r.value;
        r.method = Method::closed_form_inv_p;
        return r;
    }
    if (p > 1 && std::pow(x, p) > 2 * (m + 2)) {
        try {
            EvalResult a = eval_asymptotic(prm, 200);
            if (a.abs_err_estimate < tol * std::fabs(a.value)) return a;
        } catch (const AsymptoticRegimeError&) {
        }
    }
    return eval_quadrature(prm, tol);
}

EvalResult eval_fourier_transform(double m, double xi, double tol) {
    if (!(m > -1)) throw DomainError("fourier transform: m must exceed -1");
    if (!std::isfinite(xi)) throw DomainError("fourier transform: xi must be finite");
    if (xi == 0) throw DomainError("fourier transform: the s-integral diverges at xi = 0");
    if (!(tol > 0)) throw DomainError("tol must be positive");
    // (4^{m+1}/√(2π)) ∫ s^m e^{-s} (ξ²+4s)^{-(m+1)} ds = (Γ(m+1)/√(2π)) * normalized integral
    // of (ξ²/4 + s)^{-(m+1)}.
    const double a = 0.25 * xi * xi;
    const double e = m + 1;
    GammaWeightIntegrand f;
    f.m = m;
    f.scale = a;
    f.phi = [a, e](double s) { return std::pow(a + s, -e); };
    f.tail_bound = [a, e, m](double U) { return std::exp(log_upper_gamma_bound(m + 1, U, m)) * std::pow(a + U, -e); };
    QuadratureResult q = integrate_gamma_weight(f, tol);
    const double pref = std::exp(std::lgamma(m + 1)) / std::sqrt(2 * M_PI);
    EvalResult r;
    r.value = pref * q.value;
    r.abs_err_estimate = pref * q.abs_err + 4 * kEps * std::fabs(r.value);
    r.method = Method::quadrature;
    return r;
}

}  // namespace vmp
