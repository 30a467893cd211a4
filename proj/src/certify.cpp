#include "vmp/certify.hpp"

#include <cmath>
#include <random>
#include <sstream>

#include "vmp/bounds.hpp"
#include "vmp/errors.hpp"

namespace vmp {

namespace {

const std::vector<std::string> kYM{"y", "m"};
const std::vector<std::string> kYMK{"y", "m", "k"};

struct ChainParams {
    std::vector<std::string> vars;
    RationalPoly c, alpha, beta, q;
    // G_k^{m,p} parameters for the numeric cross-check; k < 0 means "sample k".
    double k_num = 4, p_num = 2;
};

RationalPoly var(const std::vector<std::string>& v, int i) { return RationalPoly::variable(v, i); }
RationalPoly num(const std::vector<std::string>& v, const mpq_class& c) { return RationalPoly::constant(v, c); }

struct Base {
    ExtensionElement B, W, X, R, F0;
    RationalPoly q_prev;
};

Base base_of(const ChainParams& s) {
    const RationalPoly y = var(s.vars, 0), m = var(s.vars, 1);
    Base b;
    b.B = ExtensionElement::root(s.q);
    b.W = b.B + ExtensionElement::rational(s.alpha * y - s.beta * m, s.q);
    b.X = b.B * b.W;
    const RationalPoly lin = s.alpha * y - s.beta * m + s.beta;
    const RationalPoly qp2 = mpq_class(1, 2) * s.q.derivative(0);
    const ExtensionElement BW = b.X;
    b.R = b.B * b.W * b.W + s.c * BW - lin * BW - ExtensionElement::rational(s.c * y * qp2, s.q) -
          (s.c * s.alpha * y) * b.B;
    b.q_prev = s.q.substitute(1, m - num(s.vars, 1));
    b.F0 = b.q_prev * (b.X * b.X) - b.R * b.R;
    return b;
}

RationalPoly restrict_to(const RationalPoly& p, const std::vector<std::string>& vars) {
    RationalPoly out(vars);
    for (const auto& [e, c] : p.terms()) {
        for (std::size_t i = vars.size(); i < RationalPoly::kMaxVars; ++i)
            if (e[i] != 0) throw DomainError("restrict_to: polynomial uses a dropped variable");
        out.add_term(e, c);
    }
    return out;
}

std::string printed_text(const std::string& chain, const std::string& name) {
    for (const auto& [k, v] : printed_polynomials(chain))
        if (k == name) return v;
    throw DomainError("no printed polynomial '" + name + "' for chain " + chain);
}

RationalPoly printed(const std::string& chain, const std::string& name, const std::vector<std::string>& vars) {
    if (chain == "p3k4") {
        RationalPoly p = RationalPoly::parse(printed_text(chain, name), {"y", "m", "p"});
        return restrict_to(p.evaluate_at(2, 3), vars);
    }
    return RationalPoly::parse(printed_text(chain, name), vars);
}

void expect_equal(const std::string& name, const RationalPoly& got, const RationalPoly& want) {
    if (got == want) return;
    const RationalPoly diff = got - want;
    const auto& [e, c] = *diff.terms().begin();
    std::ostringstream os;
    os << "coefficient of y^" << e[0] << " m^" << e[1];
    if (got.vars().size() > 2) os << " " << got.vars()[2] << "^" << e[2];
    os << ": derived " << got.coefficient(e).get_str() << ", printed " << want.coefficient(e).get_str();
    throw ChainMismatchError(name, os.str());
}

RationalPoly at_zero(const ExtensionElement& el, const RationalPoly& b0) { return el.with_root_value(b0).evaluate_at(0, 0); }

void add_anchor(ChainResult& r, const std::string& name, const std::string& expected, const std::string& actual) {
    r.anchors.push_back({name, expected, actual, expected == actual});
}

void add_step(ChainResult& r, const std::string& name, const std::string& mult, const ExtensionElement& v,
              const RationalPoly& b0) {
    r.steps.push_back({name, mult, v, at_zero(v, b0)});
}

// Numeric guards against transcription errors in the reduction: the first element
// matches E through B_{m-1} X - R = E W^2 B, later elements match the multiplier
// times a finite-difference derivative of their predecessor.
void numeric_guard(const ChainParams& s, const Base& b, const ChainResult& r, bool two_b) {
    std::mt19937_64 rng(20240521);
    std::uniform_real_distribution<double> uy(0.1, 5.0), um(1.0, 6.0), uk(2.0, 12.0);
    for (int t = 0; t < 20; ++t) {
        const long double y = uy(rng), m = std::round(um(rng) * 4) / 4;
        const long double k = s.vars.size() > 2 ? uk(rng) : s.k_num;
        std::vector<long double> pt{y, m};
        if (s.vars.size() > 2) pt.push_back(k);
        const long double Bv = std::sqrt(s.q.evaluate_ld(pt));
        const long double Bprev = std::sqrt(b.q_prev.evaluate_ld(pt));
        const long double Wv = b.W.evaluate(pt);
        const long double lhs = (Bprev * b.X.evaluate(pt) - b.R.evaluate(pt)) / (Wv * Wv * Bv);
        const long double E = lemma_E(k, m, s.p_num, y);
        if (std::fabs(lhs - E) > 1e-6L * (std::fabs(E) + 1e-6L))
            throw ChainMismatchError("E", "numeric cross-check of the cleared form failed at y=" + std::to_string((double)y) +
                                              " m=" + std::to_string((double)m));
        for (std::size_t i = 1; i < r.steps.size(); ++i) {
            if (r.steps[i].multiplier.find("d/dy") == std::string::npos) continue;
            const auto& prev = r.steps[i - 1].value;
            const long double h = 1e-4L * (1 + y);
            auto at = [&](long double yy) {
                std::vector<long double> q = pt;
                q[0] = yy;
                return prev.evaluate(q);
            };
            const long double d = (at(y - 2 * h) - 8 * at(y - h) + 8 * at(y + h) - at(y + 2 * h)) / (12 * h);
            const long double want = (two_b ? 2 : 1) * Bv * d;
            const long double got = r.steps[i].value.evaluate(pt);
            const long double scale = std::fabs(want) + std::fabs(got) +
                                      std::fabs(r.steps[i].value.a().evaluate_ld(pt)) +
                                      std::fabs(r.steps[i].value.b().evaluate_ld(pt)) * Bv;
            if (std::fabs(got - want) > 1e-6L * scale)
                throw ChainMismatchError(r.steps[i].name, "numeric derivative cross-check failed");
        }
    }
}

// Squaring is sound only where X >= 0 and R >= 0.
void squaring_guard(const ChainParams& s, const Base& b, ChainResult& r) {
    const std::vector<double> ks = s.vars.size() > 2 ? std::vector<double>{2, 4, 6, 8, 12} : std::vector<double>{s.k_num};
    for (double k : ks)
        for (int m = 1; m <= 10; ++m)
            for (double y : geometric_grid(1e-3, 1e3, 61)) {
                std::vector<long double> pt{y, (long double)m};
                if (s.vars.size() > 2) pt.push_back(k);
                const long double X = b.X.evaluate(pt), R = b.R.evaluate(pt);
                const long double scale = std::fabs(b.R.a().evaluate_ld(pt)) +
                                          std::fabs(b.R.b().evaluate_ld(pt)) * std::sqrt(s.q.evaluate_ld(pt));
                if (X < 0 || R < -1e-15L * scale)
                    throw ChainMismatchError("R", "a side of the squared inequality is negative at y=" +
                                                      std::to_string(y) + " m=" + std::to_string(m));
            }
    r.notes.push_back("both sides of the squared inequality checked nonnegative on y in [1e-3, 1e3], m = 1..10");
}

ChainParams params_p2(double k) {
    ChainParams s;
    s.vars = kYM;
    const RationalPoly y = var(kYM, 0), m = var(kYM, 1);
    const mpq_class kq(static_cast<long>(k));
    s.c = num(kYM, kq);
    s.alpha = num(kYM, kq - 1);
    s.beta = num(kYM, 1);
    s.q = (y + m).pow(2) + kq * y;
    s.k_num = k;
    s.p_num = 2;
    return s;
}

}  // namespace

std::string to_string(PositivityCertificate::Status s) {
    return s == PositivityCertificate::Status::all_coeffs_nonneg ? "all_coeffs_nonneg" : "sign_indefinite";
}

nlohmann::ordered_json PositivityCertificate::to_json() const {
    nlohmann::ordered_json j;
    j["status"] = to_string(status);
    j["variable"] = target.vars().empty() ? std::string("m") : target.vars()[var];
    j["lower_limit"] = low;
    j["terms"] = shifted.size();
    if (witness) {
        j["witness_exponents"] = *witness;
        j["witness_coefficient"] = witness_coeff.get_str();
    }
    j["shifted"] = shifted.to_json();
    return j;
}

PositivityCertificate positivity_for_m_ge(const RationalPoly& poly, int m_low, int var_index) {
    PositivityCertificate c;
    c.target = poly;
    c.var = var_index;
    c.low = m_low;
    c.shifted = poly.shift(var_index, m_low);
    c.status = PositivityCertificate::Status::all_coeffs_nonneg;
    if (c.shifted.is_zero()) c.status = PositivityCertificate::Status::sign_indefinite;
    for (const auto& [e, v] : c.shifted.terms())
        if (v < 0) {
            c.status = PositivityCertificate::Status::sign_indefinite;
            c.witness = e;
            c.witness_coeff = v;
            break;
        }
    return c;
}

const RationalPoly& ChainResult::poly(const std::string& name) const {
    for (const auto& [k, v] : polys)
        if (k == name) return v;
    throw std::out_of_range("chain has no polynomial " + name);
}

const ChainStep& ChainResult::step(const std::string& name) const {
    for (const auto& s : steps)
        if (s.name == name) return s;
    throw std::out_of_range("chain has no step " + name);
}

bool ChainResult::ok() const {
    for (const auto& a : anchors)
        if (!a.ok) return false;
    for (const auto& [n, c] : certificates)
        if (!c.ok()) return false;
    return true;
}

nlohmann::ordered_json ChainResult::to_json() const {
    nlohmann::ordered_json j;
    j["chain"] = chain;
    j["ok"] = ok();
    j["vars"] = vars;
    j["q"] = q.to_string();
    nlohmann::ordered_json st = nlohmann::ordered_json::array();
    for (const auto& s : steps) {
        nlohmann::ordered_json e;
        e["name"] = s.name;
        e["from"] = s.multiplier;
        e["a"] = s.value.a().to_json();
        e["b"] = s.value.b().to_json();
        e["at_zero"] = s.at_zero.to_string();
        st.push_back(std::move(e));
    }
    j["steps"] = std::move(st);
    nlohmann::ordered_json ps = nlohmann::ordered_json::array();
    for (const auto& [n, p] : polys) {
        nlohmann::ordered_json e;
        e["name"] = n;
        e["text"] = p.to_string();
        e["coefficients"] = p.to_json();
        ps.push_back(std::move(e));
    }
    j["polynomials"] = std::move(ps);
    nlohmann::ordered_json an = nlohmann::ordered_json::array();
    for (const auto& a : anchors) an.push_back({{"name", a.name}, {"expected", a.expected}, {"actual", a.actual}, {"ok", a.ok}});
    j["anchors"] = std::move(an);
    nlohmann::ordered_json cs = nlohmann::ordered_json::array();
    for (const auto& [n, c] : certificates) {
        nlohmann::ordered_json e = c.to_json();
        e["name"] = n;
        cs.push_back(std::move(e));
    }
    j["certificates"] = std::move(cs);
    j["notes"] = notes;
    return j;
}

ChainResult build_chain_k4_p2() {
    const std::string id = "k4p2";
    ChainParams s = params_p2(4);
    const Base b = base_of(s);
    const RationalPoly m = var(kYM, 1), b0 = m;
    ChainResult r;
    r.chain = id;
    r.vars = kYM;
    r.q = s.q;
    auto check = [&](const std::string& name, const RationalPoly& got) {
        expect_equal(name, got, printed(id, name, kYM));
        r.polys.emplace_back(name, got);
    };
    check("R_b", b.R.b());
    check("R_a", b.R.a());
    const ExtensionElement F = mpq_class(1, 8) * b.F0;
    add_step(r, "F", "(X^2 q(m-1) - R^2)/8", F, b0);
    check("f1", F.b());
    check("f2", -F.a());
    const ExtensionElement D = F.derivative_times_B(0);
    add_step(r, "D", "B d/dy F", D, b0);
    check("d1", D.a());
    check("d2", -D.b());
    const ExtensionElement G = D.derivative_times_B(0);
    add_step(r, "G", "B d/dy D", G, b0);
    check("g1", G.b());
    check("g2", -G.a());
    const ExtensionElement H = G.derivative_times_B(0);
    add_step(r, "H", "B d/dy G", H, b0);
    check("h1", H.a());
    check("h2", -H.b());
    expect_equal("H0", r.step("H").at_zero, printed(id, "H0", kYM));
    const ExtensionElement Lc = H.derivative_times_B(0);
    add_step(r, "l", "B d/dy H", Lc, b0);
    check("l1", Lc.b());
    check("l2", -Lc.a());
    const RationalPoly L = -Lc.norm();
    check("L", L);

    for (const char* n : {"F", "D", "G"}) add_anchor(r, std::string(n) + "(0)", "0", r.step(n).at_zero.to_string());
    add_anchor(r, "H(0)", printed(id, "H0", kYM).to_string(), r.step("H").at_zero.to_string());
    add_anchor(r, "L/4 y^8", "101250", mpq_class(L.coefficient({8, 0, 0}) / 4).get_str());
    add_anchor(r, "L/4 m^2", "14400", mpq_class(L.coefficient({0, 2, 0}) / 4).get_str());
    r.certificates.emplace_back("H(0)", positivity_for_m_ge(r.step("H").at_zero, 1));
    r.certificates.emplace_back("l1", positivity_for_m_ge(r.poly("l1"), 1));
    r.certificates.emplace_back("l2", positivity_for_m_ge(r.poly("l2"), 1));
    r.certificates.emplace_back("L", positivity_for_m_ge(L, 1));
    numeric_guard(s, b, r, false);
    squaring_guard(s, b, r);
    return r;
}

ChainResult build_chain_k8_p2() {
    const std::string id = "k8p2";
    ChainParams s = params_p2(8);
    const Base b = base_of(s);
    const RationalPoly y = var(kYM, 0), m = var(kYM, 1), b0 = m;
    ChainResult r;
    r.chain = id;
    r.vars = kYM;
    r.q = s.q;
    auto check = [&](const std::string& name, const RationalPoly& got) {
        expect_equal(name, got, printed(id, name, kYM));
        r.polys.emplace_back(name, got);
    };
    check("R_b", b.R.b());
    check("R_a", b.R.a());
    const ExtensionElement F = mpq_class(-1, 8) * b.F0;
    add_step(r, "F", "(R^2 - X^2 q(m-1))/8", F, b0);
    r.polys.emplace_back("f1", F.a());
    r.polys.emplace_back("f2", -F.b());
    const ExtensionElement D = F.derivative_times_B(0);
    add_step(r, "D", "B d/dy F", D, b0);
    r.polys.emplace_back("d1", D.b());
    r.polys.emplace_back("d2", -D.a());
    const ExtensionElement E = D.derivative_times_B(0);
    add_step(r, "E", "B d/dy D", E, b0);
    r.polys.emplace_back("e1", E.a());
    r.polys.emplace_back("e2", -E.b());
    const RationalPoly L = E.norm();
    r.polys.emplace_back("L", L);
    const RationalPoly L0 = L.evaluate_at(0, 0);
    const RationalPoly Lp0 = L.derivative(0).evaluate_at(0, 0);
    const RationalPoly Lpp = L.derivative(0).derivative(0);
    check("Lp0", Lp0);
    r.polys.emplace_back("Lpp", Lpp);

    add_anchor(r, "F(0)", "0", r.step("F").at_zero.to_string());
    add_anchor(r, "D(0)", "0", r.step("D").at_zero.to_string());
    add_anchor(r, "L(0)", "0", L0.to_string());
    add_anchor(r, "L'(0)", printed(id, "Lp0", kYM).to_string(), Lp0.to_string());
    for (int mv : {1, 2, 3, 4, 5}) {
        const mpq_class v = Lp0.evaluate_exact({0, mv});
        const std::string want = mv < 4 ? "negative" : (mv == 4 ? "zero" : "positive");
        const std::string got = v < 0 ? "negative" : (v == 0 ? "zero" : "positive");
        add_anchor(r, "sign L'(0) at m=" + std::to_string(mv), want, got);
    }
    r.certificates.emplace_back("e1", positivity_for_m_ge(r.poly("e1"), 4));
    r.certificates.emplace_back("e2", positivity_for_m_ge(r.poly("e2"), 4));
    r.certificates.emplace_back("L''", positivity_for_m_ge(Lpp, 4));
    numeric_guard(s, b, r, false);
    squaring_guard(s, b, r);
    return r;
}

ChainResult build_chain_generic_k() {
    const std::string id = "generic_k";
    ChainParams s;
    s.vars = kYMK;
    const RationalPoly y = var(kYMK, 0), m = var(kYMK, 1), k = var(kYMK, 2), one = num(kYMK, 1);
    s.c = k;
    s.alpha = k - one;
    s.beta = one;
    s.q = (y + m).pow(2) + k * y;
    s.k_num = -1;
    s.p_num = 2;
    const Base b = base_of(s);
    const RationalPoly b0 = m;
    ChainResult r;
    r.chain = id;
    r.vars = kYMK;
    r.q = s.q;
    auto check = [&](const std::string& name, const RationalPoly& got) {
        expect_equal(name, got, printed(id, name, kYMK));
        r.polys.emplace_back(name, got);
    };
    check("R_b", b.R.b());
    check("2R_a", mpq_class(2) * b.R.a());
    const ExtensionElement F = mpq_class(-4) * b.F0;
    add_step(r, "F", "4(R^2 - X^2 q(m-1))", F, b0);
    check("f1", F.a());
    check("f2", -F.b());
    ExtensionElement cur = F;
    for (int i = 1; i <= 3; ++i) {
        cur = cur.derivative_times_2B(0);
        add_step(r, "S" + std::to_string(i), "2B d/dy S" + std::to_string(i - 1), cur, b0);
    }
    const RationalPoly factor = r.steps.back().at_zero;
    check("factor", factor);
    add_anchor(r, "F(0)", "0", r.step("F").at_zero.to_string());
    add_anchor(r, "S1(0)", "0", r.step("S1").at_zero.to_string());
    add_anchor(r, "S3(0)", printed(id, "factor", kYMK).to_string(), factor.to_string());
    auto at = [&](int mv, int kv) { return factor.evaluate_exact({0, mv, kv}); };
    add_anchor(r, "S3(0) at m=2,k=12", "0", at(2, 12).get_str());
    add_anchor(r, "S3(0) at m=4,k=8", "0", at(4, 8).get_str());
    add_anchor(r, "sign S3(0) at m=1,k=8", "negative", at(1, 8) < 0 ? "negative" : "nonnegative");
    numeric_guard(s, b, r, true);
    squaring_guard(s, b, r);
    return r;
}

ChainResult build_chain_p3_k4() {
    const std::string id = "p3k4";
    ChainParams s;
    s.vars = kYM;
    const RationalPoly y = var(kYM, 0), m = var(kYM, 1);
    s.c = num(kYM, 12);
    s.alpha = num(kYM, 9);
    s.beta = num(kYM, 3);
    s.q = mpq_class(9) * (y + m).pow(2) + mpq_class(48) * y;
    s.k_num = 4;
    s.p_num = 3;
    const Base b = base_of(s);
    const RationalPoly b0 = mpq_class(3) * m;
    ChainResult r;
    r.chain = id;
    r.vars = kYM;
    r.q = s.q;
    auto check = [&](const std::string& name, const RationalPoly& got) {
        expect_equal(name, got, printed(id, name, kYM));
        r.polys.emplace_back(name, got);
    };
    check("R_b", b.R.b());
    check("R_a", b.R.a());
    const ExtensionElement F = mpq_class(1, 1944) * b.F0;
    add_step(r, "F", "(X^2 q(m-1) - R^2)/1944", F, b0);
    ExtensionElement cur = F;
    for (int i = 1; i <= 4; ++i) {
        cur = cur.derivative_times_B(0);
        add_step(r, "S" + std::to_string(i), "B d/dy " + r.steps.back().name, cur, b0);
    }
    check("l1", cur.b());
    check("l2", -cur.a());
    const RationalPoly L = -cur.norm();
    r.polys.emplace_back("L", L);
    for (const char* n : {"F", "S1", "S2"}) add_anchor(r, std::string(n) + "(0)", "0", r.step(n).at_zero.to_string());
    add_anchor(r, "l1/3 y^4", "16875", mpq_class(r.poly("l1").coefficient({4, 0, 0}) / 3).get_str());
    add_anchor(r, "l2/27 y^5", "5625", mpq_class(r.poly("l2").coefficient({5, 0, 0}) / 27).get_str());
    add_anchor(r, "l1/3 constant", "5120", mpq_class(r.poly("l1").coefficient({0, 0, 0}) / 3).get_str());
    r.certificates.emplace_back("S3(0)", positivity_for_m_ge(r.step("S3").at_zero, 1));
    r.certificates.emplace_back("l1", positivity_for_m_ge(r.poly("l1"), 1));
    r.certificates.emplace_back("l2", positivity_for_m_ge(r.poly("l2"), 1));
    r.certificates.emplace_back("L", positivity_for_m_ge(L, 1));
    numeric_guard(s, b, r, false);
    squaring_guard(s, b, r);
    return r;
}

ChainResult build_chain(const std::string& chain) {
    if (chain == "k4p2") return build_chain_k4_p2();
    if (chain == "k8p2") return build_chain_k8_p2();
    if (chain == "generic_k") return build_chain_generic_k();
    if (chain == "p3k4") return build_chain_p3_k4();
    throw DomainError("unknown chain '" + chain + "'");
}

RationalPoly optimality_factor_generic_k() { return build_chain_generic_k().poly("factor"); }

long double lemma_E(double k, double m, double p, double y) {
    if (!(m >= 1)) throw DomainError("lemma_E: m must be >= 1");
    if (!(y > 0)) throw DomainError("lemma_E: y must be positive");
    const long double g = G_k_m_p_ld(k, m, p, y), g1 = G_k_m_p_ld(k, m - 1, p, y);
    return g / g1 - 1 - G_k_m_p_derivative_ld(k, m, p, y);
}

bool LemmaSweep::violated(double m) const {
    for (const auto& v : violations)
        if (v.m == m) return true;
    return false;
}

LemmaSweep numeric_lemma_sweep(double k, double p, const std::vector<double>& m_list, const std::vector<double>& y_grid) {
    constexpr long double kFloor = 1e-12L;
    LemmaSweep s;
    s.k = k;
    s.p = p;
    s.claimed_sign = k <= 4 ? 1 : -1;
    s.report.suite = "lemma_sweep";
    for (double m : m_list) {
        std::optional<NegativeInterval> run;
        for (double y : y_grid) {
            const long double E = lemma_E(k, m, p, y);
            const long double claimed = s.claimed_sign * E;
            CheckPoint c{"E", y, m, static_cast<double>(E), 0, static_cast<double>(claimed), static_cast<double>(kFloor)};
            c.ok = claimed >= -kFloor;
            c.informational = true;
            s.report.add(c);
            if (!c.ok) {
                if (!run) run = NegativeInterval{m, y, y, c.margin};
                run->y_hi = y;
                run->worst = std::min(run->worst, c.margin);
            } else if (run) {
                s.violations.push_back(*run);
                run.reset();
            }
        }
        if (run) s.violations.push_back(*run);
    }
    return s;
}

}  // namespace vmp
