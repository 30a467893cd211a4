#include "vmp/mp.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "vmp/errors.hpp"

namespace vmp {

MpReal::MpReal(mpfr_prec_t prec) {
    mpfr_init2(v_, prec);
    mpfr_set_zero(v_, 1);
}

MpReal::MpReal(double v, mpfr_prec_t prec) {
    mpfr_init2(v_, prec);
    mpfr_set_d(v_, v, MPFR_RNDN);
}

MpReal::MpReal(const MpReal& o) {
    mpfr_init2(v_, o.prec());
    mpfr_set(v_, o.v_, MPFR_RNDN);
}

MpReal::MpReal(MpReal&& o) noexcept {
    mpfr_init2(v_, o.prec());
    mpfr_swap(v_, o.v_);
}

MpReal& MpReal::operator=(const MpReal& o) {
    if (this != &o) {
        mpfr_set_prec(v_, o.prec());
        mpfr_set(v_, o.v_, MPFR_RNDN);
    }
    return *this;
}

MpReal& MpReal::operator=(MpReal&& o) noexcept {
    mpfr_swap(v_, o.v_);
    return *this;
}

MpReal::~MpReal() { mpfr_clear(v_); }

namespace {

// Legendre continued fraction for z^{-a} e^z Γ(a,z), modified Lentz.
void upper_gamma_cf(mpfr_ptr out, mpfr_srcptr a, mpfr_srcptr z) {
    const mpfr_prec_t prec = mpfr_get_prec(out) + 32;
    MpReal b(prec), an(prec), c(prec), d(prec), f(prec), delta(prec), tiny(prec), t(prec), eps(prec);
    mpfr_set_ui_2exp(tiny.get(), 1, -static_cast<long>(prec) * 2, MPFR_RNDN);
    mpfr_set_ui_2exp(eps.get(), 1, -static_cast<long>(prec) + 8, MPFR_RNDN);
    // b0 = z + 1 - a
    mpfr_add_ui(b.get(), z, 1, MPFR_RNDN);
    mpfr_sub(b.get(), b.get(), a, MPFR_RNDN);
    mpfr_set(f.get(), b.get(), MPFR_RNDN);
    if (mpfr_zero_p(f.get())) mpfr_set(f.get(), tiny.get(), MPFR_RNDN);
    mpfr_set(c.get(), f.get(), MPFR_RNDN);
    mpfr_set_zero(d.get(), 1);
    for (long n = 1; n < 2000000; ++n) {
        // a_n = -n (n - a), b_n = b_{n-1} + 2
        mpfr_ui_sub(an.get(), n, a, MPFR_RNDN);
        mpfr_mul_si(an.get(), an.get(), -n, MPFR_RNDN);
        mpfr_add_ui(b.get(), b.get(), 2, MPFR_RNDN);
        mpfr_mul(t.get(), an.get(), d.get(), MPFR_RNDN);
        mpfr_add(d.get(), b.get(), t.get(), MPFR_RNDN);
        if (mpfr_zero_p(d.get())) mpfr_set(d.get(), tiny.get(), MPFR_RNDN);
        mpfr_ui_div(d.get(), 1, d.get(), MPFR_RNDN);
        mpfr_div(t.get(), an.get(), c.get(), MPFR_RNDN);
        mpfr_add(c.get(), b.get(), t.get(), MPFR_RNDN);
        if (mpfr_zero_p(c.get())) mpfr_set(c.get(), tiny.get(), MPFR_RNDN);
        mpfr_mul(delta.get(), c.get(), d.get(), MPFR_RNDN);
        mpfr_mul(f.get(), f.get(), delta.get(), MPFR_RNDN);
        mpfr_sub_ui(t.get(), delta.get(), 1, MPFR_RNDN);
        mpfr_abs(t.get(), t.get(), MPFR_RNDN);
        if (mpfr_less_p(t.get(), eps.get())) {
            mpfr_ui_div(out, 1, f.get(), MPFR_RNDN);
            return;
        }
    }
    throw ConvergenceError("incomplete gamma continued fraction did not converge");
}

// e^z Γ(a) - Σ z^{a+n} / (a)_{n+1}, for small z.
void upper_gamma_series(mpfr_ptr out, mpfr_srcptr a, mpfr_srcptr z) {
    const mpfr_prec_t prec = mpfr_get_prec(out) + 64;
    MpReal term(prec), sum(prec), den(prec), t(prec), g(prec), ez(prec);
    mpfr_pow(term.get(), z, a, MPFR_RNDN);
    mpfr_div(term.get(), term.get(), a, MPFR_RNDN);
    mpfr_set(sum.get(), term.get(), MPFR_RNDN);
    mpfr_set(den.get(), a, MPFR_RNDN);
    for (long n = 1; n < 100000; ++n) {
        mpfr_add_ui(den.get(), den.get(), 1, MPFR_RNDN);
        mpfr_mul(term.get(), term.get(), z, MPFR_RNDN);
        mpfr_div(term.get(), term.get(), den.get(), MPFR_RNDN);
        mpfr_add(sum.get(), sum.get(), term.get(), MPFR_RNDN);
        if (mpfr_zero_p(term.get()) ||
            mpfr_get_exp(term.get()) < mpfr_get_exp(sum.get()) - static_cast<long>(prec))
            break;
    }
    mpfr_gamma(g.get(), a, MPFR_RNDN);
    mpfr_exp(ez.get(), z, MPFR_RNDN);
    mpfr_mul(g.get(), g.get(), ez.get(), MPFR_RNDN);
    mpfr_sub(out, g.get(), sum.get(), MPFR_RNDN);
}

}  // namespace

void scaled_upper_gamma(mpfr_ptr out, mpfr_srcptr a, mpfr_srcptr z) {
    if (mpfr_cmp_ui(z, 2) >= 0) {
        MpReal za(mpfr_get_prec(out) + 32);
        upper_gamma_cf(out, a, z);
        mpfr_pow(za.get(), z, a, MPFR_RNDN);
        mpfr_mul(out, out, za.get(), MPFR_RNDN);
    } else {
        upper_gamma_series(out, a, z);
    }
}

void mp_xpow(mpfr_ptr out, double x, double p) {
    MpReal xm(x, 64), pm(p, 64);
    mpfr_pow(out, xm.get(), pm.get(), MPFR_RNDN);
}

MpReal v0_extended(double p, double x, mpfr_prec_t prec) {
    if (!(x > 0)) throw DomainError("v0_extended: x must be positive");
    MpReal out(prec);
    if (p == 2.0) {
        MpReal xm(x, prec), t(prec), pi(prec);
        mpfr_erfc(out.get(), xm.get(), MPFR_RNDN);
        mpfr_sqr(t.get(), xm.get(), MPFR_RNDN);
        mpfr_exp(t.get(), t.get(), MPFR_RNDN);
        mpfr_mul(out.get(), out.get(), t.get(), MPFR_RNDN);
        mpfr_const_pi(pi.get(), MPFR_RNDN);
        mpfr_sqrt(pi.get(), pi.get(), MPFR_RNDN);
        mpfr_mul(out.get(), out.get(), pi.get(), MPFR_RNDN);
        return out;
    }
    MpReal a(prec), z(prec);
    mpfr_set_d(a.get(), p, MPFR_RNDN);
    mpfr_ui_div(a.get(), 1, a.get(), MPFR_RNDN);
    mp_xpow(z.get(), x, p);
    scaled_upper_gamma(out.get(), a.get(), z.get());
    return out;
}

mpfr_prec_t extended_precision_bits(int m, double p, double x) {
    const double y = std::pow(x, p);
    const double per_step = std::ceil(std::log2(2.0 + y));
    return static_cast<mpfr_prec_t>(128 + std::max(m, 1) * per_step);
}

}  // namespace vmp
