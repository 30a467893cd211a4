#include "vmp/quadrature.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <queue>
#include <vector>

#include "vmp/errors.hpp"

namespace vmp {

namespace {

template <int N>
struct GaussLegendre {
    std::array<double, N> x{};
    std::array<double, N> w{};

    GaussLegendre() {
        for (int i = 0; i < N; ++i) {
            long double z = std::cos(M_PI * (i + 0.75L) / (N + 0.5L));
            long double dp = 0;
            for (int it = 0; it < 100; ++it) {
                long double p0 = 1, p1 = z;
                for (int k = 2; k <= N; ++k) {
                    long double p2 = ((2 * k - 1) * z * p1 - (k - 1) * p0) / k;
                    p0 = p1;
                    p1 = p2;
                }
                dp = N * (z * p1 - p0) / (z * z - 1);
                long double dz = p1 / dp;
                z -= dz;
                if (std::fabs(dz) < 1e-19L) break;
            }
            // recompute derivative at the converged node
            long double p0 = 1, p1 = z;
            for (int k = 2; k <= N; ++k) {
                long double p2 = ((2 * k - 1) * z * p1 - (k - 1) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            dp = N * (z * p1 - p0) / (z * z - 1);
            x[i] = static_cast<double>(z);
            w[i] = static_cast<double>(2 / ((1 - z * z) * dp * dp));
        }
    }
};

const GaussLegendre<10>& gl10() {
    static const GaussLegendre<10> g;
    return g;
}
const GaussLegendre<20>& gl20() {
    static const GaussLegendre<20> g;
    return g;
}

struct Panel {
    double a, b;
    bool subst;  // u = b * v^{1/(m+1)} on [0, b]
    double value, err;
};

struct PanelOrder {
    bool operator()(const Panel& l, const Panel& r) const { return l.err < r.err; }
};

class PanelRule {
  public:
    PanelRule(const GammaWeightIntegrand& f) : f_(f), lgm_(std::lgamma(f.m + 1)) {}

    void eval(Panel& p) const {
        double g10 = 0, g20 = 0;
        const auto& r10 = gl10();
        const auto& r20 = gl20();
        for (int i = 0; i < 10; ++i) g10 += r10.w[i] * integrand(p, r10.x[i]);
        for (int i = 0; i < 20; ++i) g20 += r20.w[i] * integrand(p, r20.x[i]);
        p.value = g20;
        p.err = std::fabs(g20 - g10);
    }

  private:
    // t in [-1, 1] mapped onto the panel; returns the already-scaled integrand.
    double integrand(const Panel& p, double t) const {
        const double m = f_.m;
        if (p.subst) {
            // ∫_0^b u^m e^{-u} φ du = b^{m+1}/(m+1) ∫_0^1 e^{-u(v)} φ(u(v)) dv
            const double v = 0.5 * (t + 1);
            const double u = p.b * std::pow(v, 1 / (m + 1));
            const double lw = (m + 1) * std::log(p.b) - std::log(m + 1) - u - lgm_;
            return 0.5 * std::exp(lw) * f_.phi(u);
        }
        const double h = 0.5 * (p.b - p.a);
        const double u = p.a + h * (t + 1);
        const double lw = m * std::log(u) - u - lgm_;
        return h * std::exp(lw) * f_.phi(u);
    }

    const GammaWeightIntegrand& f_;
    double lgm_;
};

}  // namespace

double log_upper_gamma_bound(double a, double U, double m) {
    const double lgm = std::lgamma(m + 1);
    if (a <= 1) return (a - 1) * std::log(U) - U - lgm;
    if (U <= a - 1) return std::numeric_limits<double>::infinity();
    return (a - 1) * std::log(U) - U - std::log1p(-(a - 1) / U) - lgm;
}

QuadratureResult integrate_gamma_weight(const GammaWeightIntegrand& f, double tol, int max_panels) {
    if (!(f.m > -1)) throw DomainError("quadrature: weight exponent must exceed -1");
    tol = std::max(tol, 1e-15);
    PanelRule rule(f);

    const double s0 = 0.25 * std::min(1.0, std::max(f.scale, 1e-300));
    double U = std::max({2 * (f.m + 1), 40.0, 4 * s0});

    std::priority_queue<Panel, std::vector<Panel>, PanelOrder> queue;
    std::vector<Panel> done;
    double total = 0, errsum = 0;
    int count = 0;
    auto push = [&](Panel p) {
        rule.eval(p);
        total += p.value;
        errsum += p.err;
        ++count;
        queue.push(p);
    };

    push({0, s0, f.m < 0, 0, 0});
    for (double a = s0; a < U; a *= 2) push({a, std::min(2 * a, U), false, 0, 0});

    auto recompute = [&] {
        // Refresh the running sums to avoid drift from repeated add/subtract.
        auto copy = queue;
        total = 0;
        errsum = 0;
        for (const auto& p : done) total += p.value;
        while (!copy.empty()) {
            total += copy.top().value;
            errsum += copy.top().err;
            copy.pop();
        }
    };

    int since_refresh = 0;
    for (;;) {
        double tail = f.tail_bound(U);
        while (!(tail <= 0.25 * tol * std::fabs(total))) {
            if (count > max_panels) throw ConvergenceError("quadrature: tail bound not met within budget");
            push({U, 2 * U, false, 0, 0});
            U *= 2;
            tail = f.tail_bound(U);
        }
        const double target = 0.5 * tol * std::fabs(total);
        if (errsum <= target) break;
        if (queue.empty()) break;
        if (count > max_panels) throw ConvergenceError("quadrature: panel budget exhausted");
        Panel worst = queue.top();
        queue.pop();
        // Panels already at roundoff level are frozen.
        if (worst.err <= 4 * std::numeric_limits<double>::epsilon() * std::fabs(worst.value)) {
            done.push_back(worst);
            errsum -= worst.err;
            continue;
        }
        total -= worst.value;
        errsum -= worst.err;
        --count;
        const double mid = 0.5 * (worst.a + worst.b);
        push({worst.a, mid, worst.subst, 0, 0});
        push({mid, worst.b, false, 0, 0});
        if (++since_refresh == 64) {
            recompute();
            since_refresh = 0;
        }
    }

    std::vector<Panel> all = done;
    while (!queue.empty()) {
        all.push_back(queue.top());
        queue.pop();
    }
    std::sort(all.begin(), all.end(), [](const Panel& l, const Panel& r) { return l.a < r.a; });
    // Kahan summation in panel order so the result does not depend on heap order.
    double s = 0, c = 0, e = 0;
    for (const auto& p : all) {
        double yv = p.value - c;
        double t = s + yv;
        c = (t - s) - yv;
        s = t;
        e += p.err;
    }
    QuadratureResult r;
    r.value = s;
    r.abs_err = e + f.tail_bound(U) + 10 * std::numeric_limits<double>::epsilon() * std::fabs(s);
    r.panels = static_cast<int>(all.size());
    r.cutoff = U;
    return r;
}

}  // namespace vmp
