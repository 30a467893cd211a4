#pragma once

// Thin RAII layer over MPFR plus the extended-precision V_0^p seed.

#include <mpfr.h>

namespace vmp {

class MpReal {
  public:
    explicit MpReal(mpfr_prec_t prec);
    MpReal(double v, mpfr_prec_t prec);
    MpReal(const MpReal& o);
    MpReal(MpReal&& o) noexcept;
    MpReal& operator=(const MpReal& o);
    MpReal& operator=(MpReal&& o) noexcept;
    ~MpReal();

    mpfr_ptr get() { return v_; }
    mpfr_srcptr get() const { return v_; }
    mpfr_prec_t prec() const { return mpfr_get_prec(v_); }
    double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }

  private:
    mpfr_t v_;
};

// e^z Γ(a, z) for a > 0, z > 0.
void scaled_upper_gamma(mpfr_ptr out, mpfr_srcptr a, mpfr_srcptr z);

// x^p computed at the working precision of out.
void mp_xpow(mpfr_ptr out, double x, double p);

// V_0^p(x) = e^{x^p} Γ(1/p, x^p) for x > 0.
MpReal v0_extended(double p, double x, mpfr_prec_t prec);

// Working precision for an m-step linear combination at y = x^p.
mpfr_prec_t extended_precision_bits(int m, double p, double x);

}  // namespace vmp
