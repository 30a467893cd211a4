#include "vmp/recursion.hpp"

#include <cmath>
#include <limits>

#include "vmp/errors.hpp"
#include "vmp/eval.hpp"
#include "vmp/mp.hpp"

namespace vmp {

namespace {

constexpr double kUnstableThreshold = 1e-6;

bool is_integer(double v) { return std::isfinite(v) && v == std::round(v); }

}  // namespace

RecursionSeed make_seed(double anchor, double p, double x, double tol) {
    if (!(anchor >= -1 && anchor < 1)) throw DomainError("make_seed: anchor must lie in [-1, 1)");
    if (!(x > 0)) throw DomainError("make_seed: x must be positive");
    RecursionSeed s;
    s.m0 = anchor < 0 ? anchor + 1 : anchor;
    s.p = p;
    s.x = x;
    s.v_m0 = eval_vmp(s.m0, p, x, tol).value;
    s.v_m0_minus_1 = eval_vmp(s.m0 - 1, p, x, tol).value;
    return s;
}

RecursionChain recurse_up(const RecursionSeed& seed, double target_m, bool validate) {
    if (!(seed.x > 0)) throw DomainError("recurse_up: x must be positive");
    if (!(seed.p > 0)) throw DomainError("recurse_up: p must be positive");
    if (!(seed.m0 >= 0 && seed.m0 < 1)) throw DomainError("recurse_up: seed index m0 must lie in [0, 1)");
    const double steps = target_m - seed.m0;
    if (!is_integer(steps) || steps < 1) throw DomainError("recurse_up: target_m - m0 must be a positive integer");
    const int n = static_cast<int>(steps);
    const double y = std::pow(seed.x, seed.p);
    const double s = 1 / seed.p;

    RecursionChain c;
    c.first_m = seed.m0;
    c.values.reserve(n + 1);
    c.values.push_back(seed.v_m0);
    double vm2 = seed.v_m0_minus_1, vm1 = seed.v_m0;
    for (int j = 1; j <= n; ++j) {
        const double m = seed.m0 + j;
        const double v = ((m - 1 + s - y) * vm1 + y * vm2) / m;
        c.values.push_back(v);
        vm2 = vm1;
        vm1 = v;
    }
    if (validate) {
        const double ref = eval_vmp(target_m, seed.p, seed.x, 1e-12).value;
        c.final_rel_deviation = std::fabs(c.values.back() / ref - 1);
        c.warn_unstable = !(c.final_rel_deviation <= kUnstableThreshold);
    }
    return c;
}

double unrolled_step(int m, double p, double x, const std::vector<double>& v) {
    if (m < 1) throw DomainError("unrolled_step: m must be >= 1");
    if (static_cast<int>(v.size()) < m) throw DomainError("unrolled_step: need V_0..V_{m-1}");
    const double y = std::pow(x, p);
    const double vm1 = m >= 1 ? v[m - 1] : 0;
    double sum = 0;
    for (int k = 0; k <= m - 2; ++k) sum += v[k];
    const double v_minus_1 = p == 1 ? 1.0 : std::pow(x, 1 - p);
    return ((1 - p * y) * vm1 + sum + p * y * v_minus_1) / (p * m);
}

std::vector<double> recurse_up_extended(int m_max, double p, double x) {
    if (m_max < 0) throw DomainError("recurse_up_extended: m_max must be >= 0");
    if (!(x > 0)) throw DomainError("recurse_up_extended: x must be positive");
    if (!(p > 0)) throw DomainError("recurse_up_extended: p must be positive");
    const mpfr_prec_t prec = extended_precision_bits(m_max, p, x);
    MpReal y(prec), s(prec), vm2(prec), vm1(prec), v(prec), t(prec), coef(prec);
    mp_xpow(y.get(), x, p);
    mpfr_set_d(s.get(), p, MPFR_RNDN);
    mpfr_ui_div(s.get(), 1, s.get(), MPFR_RNDN);
    // V_{-1} = x^{1-p} = x / y
    mpfr_set_d(vm2.get(), x, MPFR_RNDN);
    mpfr_div(vm2.get(), vm2.get(), y.get(), MPFR_RNDN);
    if (p == 1) {
        mpfr_set_ui(vm2.get(), 1, MPFR_RNDN);
        mpfr_set_ui(vm1.get(), 1, MPFR_RNDN);
    } else {
        vm1 = v0_extended(p, x, prec);
    }
    std::vector<double> out;
    out.reserve(m_max + 1);
    out.push_back(vm1.to_double());
    for (int m = 1; m <= m_max; ++m) {
        // coef = m - 1 + s - y
        mpfr_add_si(coef.get(), s.get(), m - 1, MPFR_RNDN);
        mpfr_sub(coef.get(), coef.get(), y.get(), MPFR_RNDN);
        mpfr_mul(v.get(), coef.get(), vm1.get(), MPFR_RNDN);
        mpfr_mul(t.get(), y.get(), vm2.get(), MPFR_RNDN);
        mpfr_add(v.get(), v.get(), t.get(), MPFR_RNDN);
        mpfr_div_si(v.get(), v.get(), m, MPFR_RNDN);
        out.push_back(v.to_double());
        mpfr_swap(vm2.get(), vm1.get());
        mpfr_swap(vm1.get(), v.get());
    }
    return out;
}

AveragedPotential averaged_potential(int N, double p, double x, double tol) {
    if (N < 1) throw DomainError("averaged_potential: N must be >= 1");
    if (!(p > 0)) throw DomainError("averaged_potential: p must be positive");
    if (!(x > 0)) throw DomainError("averaged_potential: x must be positive");
    AveragedPotential a;
    for (int m = 0; m < N; ++m) {
        EvalResult r = eval_vmp(m, p, x, tol);
        a.direct += r.value;
        a.direct_err += r.abs_err_estimate;
    }
    a.direct /= N;
    a.direct_err /= N;

    const EvalResult vN = eval_vmp(N, p, x, tol);
    const EvalResult vN1 = eval_vmp(N - 1, p, x, tol);
    const double y = std::pow(x, p);
    // p x^p V_{-1} = p x
    a.closed_form = p * vN.value - (p * x - p * y * vN1.value) / N;
    a.closed_form_err = p * vN.abs_err_estimate + p * y * vN1.abs_err_estimate / N +
                        4 * std::numeric_limits<double>::epsilon() * (p * vN.value + p * x / N);
    a.value = a.closed_form;
    const double slack = a.direct_err + a.closed_form_err + 1e-14 * std::fabs(a.direct);
    if (!(std::fabs(a.direct - a.closed_form) <= slack))
        throw ConvergenceError("averaged_potential: direct sum and closed form disagree");
    return a;
}

std::pair<double, double> gamma_identity_check(int m, double p) {
    if (m < 1) throw DomainError("gamma_identity_check: m must be >= 1");
    if (!(p > 0)) throw DomainError("gamma_identity_check: p must be positive");
    const double lhs = eval_vm0(m, p).value;
    double sum = 0;
    for (int k = 0; k < m; ++k) sum += eval_vm0(k, p).value;
    return {lhs, sum / (p * m)};
}

double averaged_derivative_at_zero(int N, double p) {
    if (N < 1) throw DomainError("averaged_derivative_at_zero: N must be >= 1");
    if (!(p > 1)) throw DomainError("averaged_derivative_at_zero: requires p > 1");
    return -p / N;
}

double averaged_slope_fd(int N, double p, double h) {
    if (!(h > 0)) throw DomainError("averaged_slope_fd: h must be positive");
    double v0 = 0;
    for (int m = 0; m < N; ++m) v0 += eval_vm0(m, p).value;
    v0 /= N;
    return (averaged_potential(N, p, h).value - v0) / h;
}

}  // namespace vmp
