#include "vmp/polys.hpp"

#include <cmath>
#include <limits>

#include "vmp/errors.hpp"
#include "vmp/eval.hpp"
#include "vmp/mp.hpp"

namespace vmp {

namespace {

RationalPoly ys(const mpq_class& c) { return RationalPoly::constant(ys_vars(), c); }
RationalPoly yvar() { return RationalPoly::variable(ys_vars(), 0); }
RationalPoly svar() { return RationalPoly::variable(ys_vars(), 1); }

std::vector<RationalPoly> family_polys(PolyFamily f, int m_max) {
    if (m_max < 0) throw DomainError("polynomial family: m must be >= 0");
    std::vector<RationalPoly> out;
    out.reserve(m_max + 1);
    switch (f) {
        case PolyFamily::P: {
            RationalPoly prev(ys_vars());  // P_{-1} = 0
            out.push_back(ys(1));
            for (int m = 1; m <= m_max; ++m) {
                const RationalPoly& pm1 = out[m - 1];
                RationalPoly next = (ys(m - 1) + svar() - yvar()) * pm1 + yvar() * (m >= 2 ? out[m - 2] : prev);
                next *= mpq_class(1, m);
                out.push_back(std::move(next));
            }
            break;
        }
        case PolyFamily::Q: {
            RationalPoly prev(ys_vars());  // Q_{-1} = 0
            out.push_back(ys(1));
            for (int m = 1; m <= m_max; ++m) {
                RationalPoly next = (ys(m) + svar() - yvar()) * out[m - 1] + yvar() * (m >= 2 ? out[m - 2] : prev);
                next *= mpq_class(1, m + 1);
                out.push_back(std::move(next));
            }
            break;
        }
        case PolyFamily::tildeP: {
            const auto& v = zs_vars();
            RationalPoly z = RationalPoly::variable(v, 0), s = RationalPoly::variable(v, 1);
            out.push_back(RationalPoly::constant(v, 1));
            if (m_max >= 1) out.push_back(z);
            for (int m = 2; m <= m_max; ++m) {
                RationalPoly next = (RationalPoly::constant(v, m - 1) + z) * out[m - 1] + (s - z) * out[m - 2];
                next *= mpq_class(1, m);
                out.push_back(std::move(next));
            }
            break;
        }
    }
    return out;
}

template <class T>
T horner(const std::vector<T>& c, T y) {
    T acc = 0;
    for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * y + *it;
    return acc;
}

std::vector<double> to_doubles(const std::vector<mpq_class>& c) {
    std::vector<double> out;
    out.reserve(c.size());
    for (const auto& q : c) out.push_back(q.get_d());
    return out;
}

mpq_class exact_of(double v) {
    mpq_class q(v);
    q.canonicalize();
    return q;
}

mpq_class eval_univariate(const std::vector<mpq_class>& c, const mpq_class& y) {
    mpq_class acc = 0;
    for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * y + *it;
    return acc;
}

int sign_of(const mpq_class& q) { return sgn(q); }

}  // namespace

std::string to_string(PolyFamily f) {
    switch (f) {
        case PolyFamily::P: return "P";
        case PolyFamily::Q: return "Q";
        case PolyFamily::tildeP: return "tildeP";
    }
    return "?";
}

std::vector<PolyFamilyEntry> build_family(PolyFamily f, int m_max) {
    auto polys = family_polys(f, m_max);
    std::vector<PolyFamilyEntry> out;
    out.reserve(polys.size());
    for (int m = 0; m <= m_max; ++m) out.push_back({m, f, std::move(polys[m])});
    return out;
}

PolyFamilyEntry build_P(int m) { return {m, PolyFamily::P, family_polys(PolyFamily::P, m).back()}; }
PolyFamilyEntry build_Q(int m) { return {m, PolyFamily::Q, family_polys(PolyFamily::Q, m).back()}; }
PolyFamilyEntry build_tildeP(int m) { return {m, PolyFamily::tildeP, family_polys(PolyFamily::tildeP, m).back()}; }

mpq_class s_of_p(double p) {
    if (!(p > 0) || !std::isfinite(p)) throw DomainError("s_of_p: p must be positive and finite");
    mpq_class s = 1 / exact_of(p);
    s.canonicalize();
    return s;
}

std::vector<mpq_class> coeffs_at(const RationalPoly& poly, double p) {
    return poly.evaluate_at(1, s_of_p(p)).univariate(0);
}

std::vector<double> explicit_P_coeffs(int m, double p) {
    if (m < 1) throw DomainError("explicit_P_coeffs: m must be >= 1");
    if (!(p > 0)) throw DomainError("explicit_P_coeffs: p must be positive");
    const double s = 1 / p;
    std::vector<double> b(m + 1);
    for (int k = 0; k <= m; ++k) {
        const double arg = m + s - k;
        if (arg <= 0 && arg == std::round(arg)) throw GammaPoleError("explicit_P_coeffs: gamma pole");
        // Γ(m+s-k)/Γ(s) as a rising product, divided by k!(m-k)!
        double v = 1;
        for (int i = 0; i < m - k; ++i) v *= (s + i) / (i + 1);
        for (int i = 1; i <= k; ++i) v /= i;
        b[k] = (k % 2 ? -v : v);
    }
    return b;
}

double eval_via_polynomials(double m, double p, double x) {
    if (!(m >= 1)) throw DomainError("eval_via_polynomials: m must be >= 1");
    if (!(p > 0)) throw DomainError("eval_via_polynomials: p must be positive");
    if (x < 0) throw DomainError("eval_via_polynomials: x must be >= 0");
    const double y = std::pow(x, p);
    if (m == std::round(m)) {
        const int mi = static_cast<int>(m);
        const auto P = to_doubles(coeffs_at(build_P(mi).poly, p));
        const auto Q = to_doubles(coeffs_at(build_Q(mi - 1).poly, p));
        const double v0 = vmp_value(0, p, x, 1e-14);
        return horner(P, y) * v0 + x * horner(Q, y);
    }
    // Fractional m: V_{a+j} = A_j V_a + C_j V_{a-1}, numeric coefficients.
    const double a = m - std::floor(m);
    const int n = static_cast<int>(std::floor(m));
    const double s = 1 / p;
    double A2 = 0, A1 = 1, C2 = 1, C1 = 0;
    for (int j = 1; j <= n; ++j) {
        const double mm = a + j;
        const double A = ((mm - 1 + s - y) * A1 + y * A2) / mm;
        const double C = ((mm - 1 + s - y) * C1 + y * C2) / mm;
        A2 = A1;
        A1 = A;
        C2 = C1;
        C1 = C;
    }
    return A1 * vmp_value(a, p, x, 1e-14) + C1 * vmp_value(a - 1, p, x, 1e-14);
}

double eval_via_polynomials_extended(int m, double p, double x) {
    if (m < 1) throw DomainError("eval_via_polynomials_extended: m must be >= 1");
    if (!(x > 0)) throw DomainError("eval_via_polynomials_extended: x must be positive");
    const auto P = coeffs_at(build_P(m).poly, p);
    const auto Q = coeffs_at(build_Q(m - 1).poly, p);
    const mpfr_prec_t prec = extended_precision_bits(m, p, x);
    MpReal y(prec), accP(prec), accQ(prec), t(prec);
    mp_xpow(y.get(), x, p);
    auto horner_mp = [&](const std::vector<mpq_class>& c, MpReal& acc) {
        mpfr_set_zero(acc.get(), 1);
        for (auto it = c.rbegin(); it != c.rend(); ++it) {
            mpfr_mul(acc.get(), acc.get(), y.get(), MPFR_RNDN);
            mpfr_set_q(t.get(), it->get_mpq_t(), MPFR_RNDN);
            mpfr_add(acc.get(), acc.get(), t.get(), MPFR_RNDN);
        }
    };
    horner_mp(P, accP);
    horner_mp(Q, accQ);
    MpReal v0 = p == 1 ? MpReal(1.0, prec) : v0_extended(p, x, prec);
    mpfr_mul(accP.get(), accP.get(), v0.get(), MPFR_RNDN);
    mpfr_mul_d(accQ.get(), accQ.get(), x, MPFR_RNDN);
    mpfr_add(accP.get(), accP.get(), accQ.get(), MPFR_RNDN);
    return accP.to_double();
}

IdentityCheck derivative_identities_check(int m) {
    if (m < 1) throw DomainError("derivative_identities_check: m must be >= 1");
    IdentityCheck r;
    auto P = family_polys(PolyFamily::P, m);
    auto Q = family_polys(PolyFamily::Q, m);
    auto T = family_polys(PolyFamily::tildeP, m);
    const RationalPoly y = yvar();
    auto report = [&](const std::string& what, const RationalPoly& diff) {
        if (diff.is_zero()) return true;
        const auto& [e, c] = *diff.terms().begin();
        r.ok = false;
        r.detail = what + ": residual coefficient " + c.get_str() + " at exponents (" + std::to_string(e[0]) + "," +
                   std::to_string(e[1]) + ")";
        return false;
    };
    for (int k = 1; k <= m; ++k) {
        if (!report("dP_" + std::to_string(k) + "/dy + P_" + std::to_string(k - 1), P[k].derivative(0) + P[k - 1]))
            return r;
        RationalPoly rhs = P[k] - ys(k + 1) * Q[k] + ys(k) * Q[k - 1];
        if (!report("y dQ_" + std::to_string(k - 1) + "/dy identity", y * Q[k - 1].derivative(0) - rhs)) return r;
        if (!report("d tildeP_" + std::to_string(k) + "/dz - tildeP_" + std::to_string(k - 1),
                    T[k].derivative(0) - T[k - 1]))
            return r;
    }
    return r;
}

RationalPoly ode_residual_check(int m, double /*p*/) {
    if (m < 1) throw DomainError("ode_residual_check: m must be >= 1");
    const RationalPoly P = build_P(m).poly;
    const RationalPoly d1 = P.derivative(0), d2 = d1.derivative(0);
    return yvar() * d2 - (ys(m - 1) + svar() - yvar()) * d1 - ys(m) * P;
}

IdentityCheck sum_identity_check(int m) {
    if (m < 1) throw DomainError("sum_identity_check: m must be >= 1");
    IdentityCheck r;
    auto P = family_polys(PolyFamily::P, m);
    auto Q = family_polys(PolyFamily::Q, m);
    RationalPoly sp(ys_vars()), sq(ys_vars());
    for (int j = 0; j < m; ++j) {
        sp += P[j];
        sq += Q[j];
    }
    RationalPoly rp = (svar() * sp - yvar() * P[m - 1]) * mpq_class(1, m);
    RationalPoly rq = (svar() * sq - yvar() * Q[m - 1] + ys(1)) * mpq_class(1, m + 1);
    if (rp != P[m]) {
        r.ok = false;
        r.detail = "P sum identity fails at m=" + std::to_string(m);
    } else if (rq != Q[m]) {
        r.ok = false;
        r.detail = "Q sum identity fails at m=" + std::to_string(m);
    }
    return r;
}

double hyp1f1_series(double a, double b, double y, int max_terms) {
    if (b <= 0 && b == std::round(b)) throw DomainError("1F1: b is a nonpositive integer");
    double term = 1, sum = 1, biggest = 1;
    for (int n = 0; n < max_terms; ++n) {
        term *= (a + n) / (b + n) * y / (n + 1);
        sum += term;
        biggest = std::max(biggest, std::fabs(term));
        if (n > std::fabs(b) && std::fabs(term) <= 1e-17 * std::max(std::fabs(sum), biggest * 1e-3)) return sum;
        if (term == 0 && n > std::fabs(b)) return sum;
    }
    throw SeriesBudgetError("1F1 series did not converge within budget");
}

std::pair<double, double> hypergeometric_check(int m, double p, double y) {
    if (m < 1) throw DomainError("hypergeometric_check: m must be >= 1");
    if (inverse_integer_exponent(p) >= 1) throw DomainError("hypergeometric_check: requires p != 1/n");
    const double s = 1 / p;
    const double b = 1 - s - m;
    if (b <= 0 && b == std::round(b)) throw DomainError("hypergeometric_check: 1-1/p-m is a nonpositive integer");
    const double lhs = eval_univariate(coeffs_at(build_P(m).poly, p), exact_of(y)).get_d();
    // 1/(m B(m,s)) = Π_{i<m} (s+i) / m!
    double pref = 1;
    for (int i = 0; i < m; ++i) pref *= (s + i) / (i + 1);
    const double rhs = pref * std::exp(-y) * hyp1f1_series(1 - s, b, y);
    return {lhs, rhs};
}

double polynomial_term_scale(int m, double p, double y) {
    const auto c = coeffs_at(build_P(m).poly, p);
    double s = 0, yk = 1;
    for (const auto& q : c) {
        s += std::fabs(q.get_d()) * yk;
        yk *= y;
    }
    return s;
}

std::optional<double> tildeP_roots(int m, double p) {
    if (m < 1) throw DomainError("tildeP_roots: m must be >= 1");
    const auto c = coeffs_at(build_tildeP(m).poly, p);
    if (m % 2 == 0) {
        const int n = 400;
        for (int i = 0; i <= n; ++i) {
            mpq_class z(-(2 * m + 2) * 2 * (n - i) + (2 * m + 2) * 2 * i, 2 * n);
            z.canonicalize();
            if (sign_of(eval_univariate(c, z)) < 0)
                throw BracketError("tildeP_roots: even-order polynomial negative at z=" + std::to_string(z.get_d()));
        }
        return std::nullopt;
    }
    mpq_class lo(-m + 1), hi(0);
    int slo = sign_of(eval_univariate(c, lo)), shi = sign_of(eval_univariate(c, hi));
    if (shi == 0) return 0.0;
    if (slo == 0) return lo.get_d();
    if (slo == shi) throw BracketError("tildeP_roots: no sign change on [-m+1, 0] for m=" + std::to_string(m));
    const mpq_class tol(1L, 1L << 42);
    while (hi - lo > tol) {
        mpq_class mid = (lo + hi) / 2;
        int sm = sign_of(eval_univariate(c, mid));
        if (sm == 0) return mid.get_d();
        if (sm == slo) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    return mpq_class((lo + hi) / 2).get_d();
}

int count_nonnegative_roots_P(int m, double p) {
    const auto c = coeffs_at(build_P(m).poly, p);
    // Cauchy bound on root magnitudes.
    mpq_class bound = 0;
    for (std::size_t i = 0; i + 1 < c.size(); ++i) {
        mpq_class r = abs(c[i] / c.back());
        if (r > bound) bound = r;
    }
    bound += 1;
    const int n = 20000;
    int changes = 0, prev = sign_of(eval_univariate(c, mpq_class(0)));
    if (prev == 0) ++changes;
    for (int i = 1; i <= n; ++i) {
        mpq_class yv = bound * mpq_class(i, n);
        int sg = sign_of(eval_univariate(c, yv));
        if (sg == 0) {
            ++changes;
            prev = 0;
            continue;
        }
        if (prev != 0 && sg != prev) ++changes;
        prev = sg;
    }
    return changes;
}

}  // namespace vmp
