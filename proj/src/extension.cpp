#include "vmp/extension.hpp"

#include <cmath>

#include "vmp/errors.hpp"

namespace vmp {

ExtensionElement::ExtensionElement(RationalPoly a, RationalPoly b, RationalPoly q)
    : a_(std::move(a)), b_(std::move(b)), q_(std::move(q)) {
    if (a_.vars().empty()) a_ = RationalPoly(q_.vars()) + a_;
    if (b_.vars().empty()) b_ = RationalPoly(q_.vars()) + b_;
}

ExtensionElement ExtensionElement::root(const RationalPoly& q) {
    return {RationalPoly(q.vars()), RationalPoly::constant(q.vars(), 1), q};
}

ExtensionElement ExtensionElement::rational(const RationalPoly& a, const RationalPoly& q) {
    return {a, RationalPoly(q.vars()), q};
}

void ExtensionElement::check_same_q(const ExtensionElement& o) const {
    if (q_ != o.q_) throw DomainError("extension elements over different square roots");
}

ExtensionElement& ExtensionElement::operator+=(const ExtensionElement& o) {
    check_same_q(o);
    a_ += o.a_;
    b_ += o.b_;
    return *this;
}

ExtensionElement& ExtensionElement::operator-=(const ExtensionElement& o) {
    check_same_q(o);
    a_ -= o.a_;
    b_ -= o.b_;
    return *this;
}

ExtensionElement ExtensionElement::operator-() const { return {-a_, -b_, q_}; }

ExtensionElement operator*(const ExtensionElement& u, const ExtensionElement& v) {
    u.check_same_q(v);
    return {u.a_ * v.a_ + u.b_ * v.b_ * u.q_, u.a_ * v.b_ + u.b_ * v.a_, u.q_};
}

ExtensionElement operator*(const RationalPoly& c, const ExtensionElement& u) { return {c * u.a_, c * u.b_, u.q_}; }

ExtensionElement operator*(const mpq_class& c, const ExtensionElement& u) { return {c * u.a_, c * u.b_, u.q_}; }

bool operator==(const ExtensionElement& u, const ExtensionElement& v) {
    return u.q_ == v.q_ && u.a_ == v.a_ && u.b_ == v.b_;
}

ExtensionElement ExtensionElement::conj() const { return {a_, -b_, q_}; }

RationalPoly ExtensionElement::norm() const { return a_ * a_ - b_ * b_ * q_; }

ExtensionElement ExtensionElement::derivative_times_2B(int var) const {
    const RationalPoly two = RationalPoly::constant(q_.vars(), 2);
    return {two * b_.derivative(var) * q_ + b_ * q_.derivative(var), two * a_.derivative(var), q_};
}

ExtensionElement ExtensionElement::derivative_times_B(int var) const {
    return {b_.derivative(var) * q_ + mpq_class(1, 2) * (b_ * q_.derivative(var)), a_.derivative(var), q_};
}

long double ExtensionElement::evaluate(const std::vector<long double>& point) const {
    const long double qv = q_.evaluate_ld(point);
    if (qv < 0) throw DomainError("extension element: q is negative at the evaluation point");
    return a_.evaluate_ld(point) + b_.evaluate_ld(point) * std::sqrt(qv);
}

RationalPoly ExtensionElement::with_root_value(const RationalPoly& b0) const { return a_ + b_ * b0; }

}  // namespace vmp
