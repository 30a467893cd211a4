#include "vmp/bounds.hpp"

#include <cmath>
#include <functional>
#include <limits>
#include <map>
#include <string>

#include "vmp/errors.hpp"

namespace vmp {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr double kSlack = 1e-9;

double bisect(const std::function<double(double)>& f, double lo, double hi, const char* what) {
    double flo = f(lo), fhi = f(hi);
    if (flo == 0) return lo;
    if (fhi == 0) return hi;
    if ((flo < 0) == (fhi < 0)) throw BracketError(std::string(what) + ": no sign change on bracket");
    for (int i = 0; i < 200 && hi - lo > 4 * kEps * std::fabs(hi); ++i) {
        const double mid = 0.5 * (lo + hi);
        const double fm = f(mid);
        if (fm == 0) return mid;
        if ((fm < 0) == (flo < 0)) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

EvalResult v0(double x, double tol) { return eval_vmp(0, 2, x, tol); }

double vabs_err(const EvalResult& r) { return r.abs_err_estimate + 4 * kEps * std::fabs(r.value); }

}  // namespace

double g_k(double k, double x) {
    if (!(k > 0)) throw DomainError("g_k: k must be positive");
    if (x < 0) throw DomainError("g_k: x must be >= 0");
    return k / ((k - 1) * x + std::sqrt(x * x + k));
}

double g_k_m(double k, double m, double x) {
    if (!(k > 0)) throw DomainError("g_k_m: k must be positive");
    if (x < 0 || m + k <= 0) throw DomainError("g_k_m: requires x >= 0 and m + k > 0");
    return k / ((k - 1) * x + std::sqrt(x * x + m + k));
}

double G_k_m(double k, double m, double y) { return G_k_m_p(k, m, 2, y); }

namespace {

template <class T>
T G_impl(T k, T m, T p, T y) {
    if (y == 0) return p * m / (p * m + p - 1);  // 0 when m = 0
    const T S = std::sqrt(p * p * (y + m) * (y + m) + 2 * k * p * (p - 1) * y);
    // denominator / y, with S - pm rationalized
    const T dt = p * (k - 1) + (p * p * y + 2 * p * p * m + 2 * k * p * (p - 1)) / (S + p * m);
    return k * p / dt;
}

template <class T>
T G_derivative_impl(T k, T m, T p, T y) {
    const T S = std::sqrt(p * p * (y + m) * (y + m) + 2 * k * p * (p - 1) * y);
    const T dt = p * (k - 1) + (p * p * y + 2 * p * p * m + 2 * k * p * (p - 1)) / (S + p * m);
    // (p(y-m) + S) / y
    const T n2 = m > y ? (4 * p * p * m + 2 * k * p * (p - 1)) / (S + p * (m - y)) : (p * (y - m) + S) / y;
    return k * k * p * p * (p - 1) * n2 / ((p * (y + m) + S) * S * dt * dt);
}

void check_G_args(double k, double m, double p, double y) {
    if (!(k >= 1)) throw DomainError("G_k_m_p: k must be >= 1");
    if (!(m >= 0)) throw DomainError("G_k_m_p: m must be >= 0");
    if (!(p >= 1)) throw DomainError("G_k_m_p: p must be >= 1");
    if (!(y >= 0)) throw DomainError("G_k_m_p: argument must be >= 0");
}

}  // namespace

double G_k_m_p(double k, double m, double p, double y) {
    check_G_args(k, m, p, y);
    return G_impl<double>(k, m, p, y);
}

long double G_k_m_p_ld(long double k, long double m, long double p, long double y) {
    check_G_args(k, m, p, y);
    return G_impl<long double>(k, m, p, y);
}

double G_k_m_p_derivative(double k, double m, double p, double y) {
    check_G_args(k, m, p, y);
    if (m == 0 && y == 0) throw DomainError("G_k_m_p_derivative: unbounded at y = 0 for m = 0");
    return G_derivative_impl<double>(k, m, p, y);
}

long double G_k_m_p_derivative_ld(long double k, long double m, long double p, long double y) {
    check_G_args(k, m, p, y);
    if (m == 0 && y == 0) throw DomainError("G_k_m_p_derivative: unbounded at y = 0 for m = 0");
    return G_derivative_impl<long double>(k, m, p, y);
}

JensenBounds jensen_bounds(double m, double p, double x) {
    if (!(p > 0)) throw DomainError("jensen_bounds: p must be positive");
    if (!(m > -1)) throw DomainError("jensen_bounds: m must exceed -1");
    if (x < 0) throw DomainError("jensen_bounds: x must be >= 0");
    const double y = std::pow(x, p);
    JensenBounds b;
    if (p == 1) {
        b.lower = 1;
        b.upper = 1;
    } else if (p > 1) {
        const double c = (p - 1) / p;
        b.lower = std::pow(y + m + 1, -c);
        if (m >= 0 && y + m > 0) b.upper = std::pow(y + m, -c);
    } else if (p >= 0.5) {
        if (m < 0) throw DomainError("jensen_bounds: for 1/2 <= p < 1 the lower bound needs m >= 0");
        const double e = (1 - p) / p;
        b.lower = std::pow(y + m, e);
        b.upper = std::pow(y + m + 1, e);
    } else {
        b.lower = std::pow(y + m + 1, (1 - p) / p);
    }
    return b;
}

BoydBounds boyd_bounds(double m) {
    if (!(m > 0)) throw DomainError("boyd_bounds: m must be positive");
    BoydBounds b;
    b.lower = std::sqrt(m + 0.75 + 1 / (32 * m + 48)) / (m + 0.5);
    b.upper = 1 / std::sqrt(m + 0.25 + 1 / (32 * m + 32));
    return b;
}

double mascioni_upper_v0p(double p, double x) {
    if (!(p >= 2)) throw DomainError("mascioni_upper_v0p: p must be >= 2");
    if (!(x > 0)) throw DomainError("mascioni_upper_v0p: x must be positive");
    return 4 * p /
           (3 * p * std::pow(x, p - 1) + std::sqrt(p * p * std::pow(x, 2 * p - 2) + 8 * p * (p - 1) * std::pow(x, p - 2)));
}

EvalResult ratio_with_error(double m, double p, double x, double tol) {
    if (!(m >= 0)) throw DomainError("ratio: m must be >= 0");
    if (p == 1) return {1.0, 0.0, Method::closed_form_inv_p};
    // V_{m-1}(0) diverges for p > 1 when m - 1 <= -1/p
    if (x == 0 && p > 1 && m - 1 <= -1 / p) return {0.0, 0.0, Method::gamma_ratio};
    const EvalResult a = eval_vmp(m, p, x, tol);
    const EvalResult b = eval_vmp(m - 1, p, x, tol);
    EvalResult r;
    r.value = a.value / b.value;
    r.abs_err_estimate =
        std::fabs(r.value) * (a.abs_err_estimate / std::fabs(a.value) + b.abs_err_estimate / std::fabs(b.value) + 2 * kEps);
    r.method = a.method;
    return r;
}

double ratio(double m, double p, double x, double tol) { return ratio_with_error(m, p, x, tol).value; }

Report verify_v0_bounds(const std::vector<double>& grid, double tol) {
    Report r;
    r.suite = "v0";
    for (double x : grid) {
        const EvalResult v = v0(x, tol);
        const double gpi = g_k(M_PI, x), g4 = g_k(4, x);
        const double err = vabs_err(v) + 4 * kEps * gpi;
        CheckPoint lo{"lower", x, 0, gpi, v.value, v.value - gpi, err};
        lo.ok = x == 0 ? lo.margin >= -err : lo.margin > err;
        r.add(lo);
        CheckPoint up{"upper", x, 0, v.value, g4, g4 - v.value, vabs_err(v) + 4 * kEps * g4};
        up.ok = up.margin > up.err;
        r.add(up);
    }
    return r;
}

Report verify_ratio_bounds(int m_max, const std::vector<double>& grid, double tol) {
    if (m_max < 1) throw DomainError("verify_ratio_bounds: m_max must be >= 1");
    Report r;
    r.suite = "ratio";
    for (double x : grid) {
        if (x < 0) throw DomainError("verify_ratio_bounds: grid must be nonnegative");
        std::vector<EvalResult> v;  // v[j] = V_{j-1}
        for (int j = 0; j <= m_max + 1; ++j) v.push_back(eval_vmp(j - 1, 2, x, tol));
        const double y = x * x;
        for (int m = 1; m <= m_max; ++m) {
            const double vm = v[m + 1].value, em = v[m + 1].abs_err_estimate;
            const double vm1 = v[m].value, em1 = v[m].abs_err_estimate;
            const double R = vm / vm1;
            const double errR = R * (em / vm + em1 / vm1 + 2 * kEps);
            const double lo = G_k_m(8, m - 1, y), hi = G_k_m(4, m, y);
            CheckPoint cl{"lower", x, double(m), lo, R, R - lo, errR + 8 * kEps * lo};
            cl.ok = cl.margin > cl.err && cl.margin > -kSlack;
            r.add(cl);
            CheckPoint cu{"upper", x, double(m), R, hi, hi - R, errR + 8 * kEps * hi};
            cu.ok = cu.margin > cu.err && cu.margin > -kSlack;
            r.add(cu);
        }
    }
    return r;
}

Report verify_convexity_reciprocal(int m, double p, const std::vector<double>& grid, double tol) {
    if (m < 0) throw DomainError("verify_convexity_reciprocal: m must be >= 0");
    if (!(p >= 2)) throw DomainError("verify_convexity_reciprocal: p must be >= 2");
    Report r;
    r.suite = "convexity";
    const bool info = p != 2;
    auto inv = [&](double t) { return 1 / eval_vmp(m, p, t, tol).value; };
    for (double x : grid) {
        if (x > 0) {
            const double h = std::min(x, 0.01 * std::max(x, 1.0));
            const double d2 = (inv(x + h) - 2 * inv(x) + inv(x - h)) / (h * h);
            CheckPoint c{"fd", x, double(m), d2, 0, d2 + 1e-7, 4 * tol * inv(x) / (h * h)};
            c.ok = d2 >= -1e-7;
            c.informational = info;
            r.add(c);
        }
        if (p == 2) {
            const EvalResult R = ratio_with_error(m, 2, x, tol);
            const double z = R.value, y = x * x;
            const double A = 1 + 2 * m - 2 * y, B = 3 * y - m;
            const double P = z * z * A + 2 * z * B - 4 * y;
            const double dP = std::fabs(2 * z * A + 2 * B);
            const double err = dP * R.abs_err_estimate + 8 * kEps * (std::fabs(z * z * A) + std::fabs(2 * z * B) + 4 * y);
            CheckPoint c{"quadratic", x, double(m), P, 0, -P, err};
            c.ok = x == 0 ? c.margin >= -err : c.margin > err;
            r.add(c);
        }
    }
    return r;
}

Report verify_ratio_monotone(int m, const std::vector<double>& grid, double p, double tol) {
    if (m < 0) throw DomainError("verify_ratio_monotone: m must be >= 0");
    Report r;
    r.suite = "monotone";
    double prev = 0;
    bool have = false;
    for (double x : grid) {
        const double R = ratio(m + 1, p, x, tol);
        if (have) {
            CheckPoint c{"increment", x, double(m + 1), prev, R, R - prev, kSlack};
            c.ok = c.margin >= -kSlack;
            r.add(c);
        }
        prev = R;
        have = true;
    }
    return r;
}

Report verify_jensen(const std::vector<double>& ms, const std::vector<double>& ps, const std::vector<double>& grid) {
    Report r;
    r.suite = "jensen";
    for (double p : ps)
        for (double m : ms) {
            for (double x : grid) {
                if (!(x > 0)) continue;
                JensenBounds b;
                try {
                    b = jensen_bounds(m, p, x);
                } catch (const DomainError&) {
                    continue;
                }
                const EvalResult v = eval_vmp(m, p, x, 1e-12);
                const double err = vabs_err(v) + kSlack * std::fabs(v.value);
                CheckPoint lo{"lower", x, m, b.lower, v.value, v.value - b.lower, err};
                lo.ok = lo.margin >= -err;
                r.add(lo);
                if (b.upper) {
                    CheckPoint up{"upper", x, m, v.value, *b.upper, *b.upper - v.value, err};
                    up.ok = up.margin >= -err;
                    r.add(up);
                }
            }
        }
    return r;
}

Report verify_boyd(const std::vector<double>& ms) {
    Report r;
    r.suite = "boyd";
    for (double m : ms) {
        const BoydBounds b = boyd_bounds(m);
        const EvalResult v = eval_vm0(m, 2);
        const double err = vabs_err(v) + 4 * kEps * v.value;
        CheckPoint lo{"lower", 0, m, b.lower, v.value, v.value - b.lower, err};
        lo.ok = lo.margin > err;
        r.add(lo);
        CheckPoint up{"upper", 0, m, v.value, b.upper, b.upper - v.value, err};
        up.ok = up.margin > err;
        r.add(up);
    }
    return r;
}

Report verify_mascioni(const std::vector<double>& ps, const std::vector<double>& grid) {
    Report r;
    r.suite = "mascioni";
    for (double p : ps)
        for (double x : grid) {
            if (!(x > 0)) continue;
            const EvalResult v = eval_vmp(0, p, x, 1e-13);
            const double b = mascioni_upper_v0p(p, x);
            CheckPoint c{"upper", x, p, v.value, b, b - v.value, vabs_err(v) + 8 * kEps * b};
            c.ok = c.margin >= -c.err;  // gap falls below double resolution for large x^p
            r.add(c);
        }
    return r;
}

std::optional<double> find_upper_bound_failure(double k, const std::vector<double>& grid) {
    for (double x : grid) {
        const EvalResult v = v0(x, 1e-13);
        if (g_k(k, x) < v.value - vabs_err(v)) return x;
    }
    return std::nullopt;
}

std::optional<double> find_lower_bound_failure(double k, const std::vector<double>& grid) {
    for (double x : grid) {
        const EvalResult v = v0(x, 1e-13);
        if (g_k(k, x) > v.value + vabs_err(v)) return x;
    }
    return std::nullopt;
}

Report verify_triangle(double m, const std::vector<double>& grid, double p) {
    Report r;
    r.suite = "triangle";
    const bool info = m != std::round(m);
    std::map<double, double> inv;
    auto f = [&](double t) {
        auto it = inv.find(t);
        if (it != inv.end()) return it->second;
        const double v = 1 / eval_vmp(m, p, t, 1e-13).value;
        inv.emplace(t, v);
        return v;
    };
    for (double a : grid)
        for (double b : grid) {
            if (b < a) continue;
            const double lhs = f(a + b), rhs = f(a) + f(b);
            CheckPoint c{"triangle", a, m, lhs, rhs, rhs - lhs, kSlack * rhs};
            c.ok = c.margin >= -c.err;
            c.informational = info;
            r.add(c);
        }
    return r;
}

std::vector<double> asymptotic_coeffs(double m, double p, int n) {
    if (!(p > 1)) throw DomainError("asymptotic_coeffs: requires p > 1");
    const double c = (p - 1) / p;
    std::vector<double> a(n);
    if (n > 0) a[0] = 1;
    for (int j = 0; j + 1 < n; ++j) a[j + 1] = a[j] * (-c - j) / (j + 1) * (m + 1 + j);
    return a;
}

std::vector<double> ratio_asymptotic_coeffs(double m, double p, int n) {
    const auto A = asymptotic_coeffs(m, p, n), B = asymptotic_coeffs(m - 1, p, n);
    std::vector<double> r(n);
    for (int i = 0; i < n; ++i) {
        double s = A[i];
        for (int j = 1; j <= i; ++j) s -= B[j] * r[i - j];
        r[i] = s / B[0];
    }
    return r;
}

double asymptotic_truncation_scaled(double m, double p, double x, int n_terms) {
    if (!(x > 0)) throw DomainError("asymptotic_truncation_scaled: x must be positive");
    const auto a = asymptotic_coeffs(m, p, n_terms);
    const double y = std::pow(x, p);
    double s = 0, yk = 1;
    for (double c : a) {
        s += c / yk;
        yk *= y;
    }
    s *= std::pow(x, 1 - p);
    const double v = eval_quadrature({m, p, x}, 1e-15).value;
    return std::pow(x, (n_terms + 1) * p - 1) * std::fabs(v - s);
}

double ratio_expansion_scaled_error(int m, double y) {
    if (m < 0 || !(y > 0)) throw DomainError("ratio_expansion_scaled_error: bad arguments");
    const double x = std::sqrt(y);
    const double R = eval_quadrature({double(m), 2, x}, 1e-15).value /
                     (m == 0 ? eval_vmp(-1, 2, x).value : eval_quadrature({double(m - 1), 2, x}, 1e-15).value);
    const double e = 1 - 1 / (2 * y) + (4.0 * m + 6) / (8 * y * y);
    return y * y * y * std::fabs(R - e);
}

double h1(double x) {
    const long double X = x, S = std::sqrt(8 + X * X);
    return static_cast<double>(2 * X * (7 * X + S) / (9 * X + 14 * X * X * X + (2 * X * X - 1) * S));
}

double h2(double x) {
    const long double X = x, X2 = X * X, S = std::sqrt(8 * X2 + (1 + X2) * (1 + X2));
    const long double num = 3 + 9 * X2 + 14 * X2 * X2 + (2 * X2 - 3) * S;
    const long double den = -3 - 7 * X2 + 32 * X2 * X2 + 28 * X2 * X2 * X2 + (3 - 4 * X2 + 4 * X2 * X2) * S;
    return static_cast<double>(2 * X * num / den);
}

double h3(double x) {
    const long double X = x, X2 = X * X, X4 = X2 * X2, S = std::sqrt(8 * X2 + (2 + X2) * (2 + X2));
    const long double num = -30 - 23 * X2 + 32 * X4 + 28 * X4 * X2 + S * (15 - 8 * X2 + 4 * X4);
    const long double N = 30 + 3 * X2 - 42 * X4 + 92 * X4 * X2 + 56 * X4 * X4 + S * (-15 + 18 * X2 - 12 * X4 + 8 * X4 * X2);
    return static_cast<double>(2 * X * num / N);
}

double crossover_x0() {
    return bisect([](double x) { return 9 * x + 14 * x * x * x + (2 * x * x - 1) * std::sqrt(8 + x * x); }, 0.1, 0.5,
                  "crossover_x0");
}

double crossover_x1() {
    return bisect([](double x) { return h1(x) - g_k(4, x); }, 1.0, 2.0, "crossover_x1");
}

Report verify_r123(const std::vector<double>& grid) {
    Report r;
    r.suite = "r123";
    const double x0 = crossover_x0(), x1 = crossover_x1();
    r.values.emplace_back("x0", x0);
    r.values.emplace_back("x1", x1);
    for (double x : grid) {
        if (!(x > 0)) continue;
        const EvalResult v = v0(x, 1e-13);
        const double err = vabs_err(v) + kSlack * v.value;
        if (x > x0) {
            const double h = h1(x);
            CheckPoint c{"r1", x, 1, v.value, h, h - v.value, err};
            c.ok = c.margin >= -err;
            r.add(c);
            if (x <= x1) {
                CheckPoint g{"g4_le_h1", x, 1, g_k(4, x), h, h - g_k(4, x), 8 * kEps * h};
                g.ok = g.margin >= -g.err;
                r.add(g);
            }
        }
        if (x >= x1) {
            const double h = h1(x);
            CheckPoint c{"h1_lt_inv_x", x, 1, h, 1 / x, 1 / x - h, 8 * kEps / x};
            c.ok = c.margin > c.err;
            r.add(c);
            const double dx = 1e-3 * x;
            const double d = (h1(x + dx) - h1(x - dx)) / (2 * dx);
            const double rhs = 2 * (x * h - 1);
            CheckPoint dc{"h1_derivative", x, 1, d, rhs, rhs - d, 1e-9 * std::fabs(d)};
            dc.ok = dc.margin >= -dc.err;
            r.add(dc);
        }
        if (const double h = h2(x); h > 0) {
            CheckPoint c{"r2", x, 2, h, v.value, v.value - h, err};
            c.ok = c.margin >= -err;
            r.add(c);
        }
        if (const double h = h3(x); h > 0) {
            CheckPoint c{"r3", x, 3, v.value, h, h - v.value, err};
            c.ok = c.margin >= -err;
            r.add(c);
        }
    }
    return r;
}

double search_gkm_index(double m) {
    if (!(m >= 0)) throw DomainError("search_gkm_index: m must be >= 0");
    // k/sqrt(m+k) = V_m(0)  <=>  k^2 - v^2 k - v^2 m = 0
    const double v2 = std::pow(eval_vm0(m, 2).value, 2);
    return 0.5 * (v2 + std::sqrt(v2 * v2 + 4 * v2 * m));
}

}  // namespace vmp
