#pragma once

// Elements a + b B of the ring Q[y, m, ...][B] / (B^2 - q).

#include <vector>

#include "vmp/rational_poly.hpp"

namespace vmp {

class ExtensionElement {
  public:
    ExtensionElement() = default;
    ExtensionElement(RationalPoly a, RationalPoly b, RationalPoly q);

    // The element B itself.
    static ExtensionElement root(const RationalPoly& q);
    static ExtensionElement rational(const RationalPoly& a, const RationalPoly& q);

    const RationalPoly& a() const { return a_; }
    const RationalPoly& b() const { return b_; }
    const RationalPoly& q() const { return q_; }

    ExtensionElement& operator+=(const ExtensionElement& o);
    ExtensionElement& operator-=(const ExtensionElement& o);
    ExtensionElement operator-() const;
    friend ExtensionElement operator+(ExtensionElement u, const ExtensionElement& v) { return u += v; }
    friend ExtensionElement operator-(ExtensionElement u, const ExtensionElement& v) { return u -= v; }
    friend ExtensionElement operator*(const ExtensionElement& u, const ExtensionElement& v);
    friend ExtensionElement operator*(const RationalPoly& c, const ExtensionElement& u);
    friend ExtensionElement operator*(const mpq_class& c, const ExtensionElement& u);
    friend bool operator==(const ExtensionElement& u, const ExtensionElement& v);

    // a - b B
    ExtensionElement conj() const;
    // (a + bB)(a - bB) = a^2 - b^2 q
    RationalPoly norm() const;

    // d/dvar (a + bB) = N / (2B) with N = 2a' B + 2b' q + b q'. Returns N.
    ExtensionElement derivative_times_2B(int var) const;
    // B d/dvar (a + bB) = (b' q + b q'/2) + a' B
    ExtensionElement derivative_times_B(int var) const;

    // Substitute the sign-fixed value B = sqrt(q) at a numeric point.
    long double evaluate(const std::vector<long double>& point) const;
    // a + b B0 where B0 is the caller's exact value of B on a slice (e.g. y = 0).
    RationalPoly with_root_value(const RationalPoly& b0) const;

  private:
    void check_same_q(const ExtensionElement& o) const;
    RationalPoly a_, b_, q_;
};

}  // namespace vmp
