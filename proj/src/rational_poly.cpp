#include "vmp/rational_poly.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace vmp {

namespace {

int nvars_checked(const std::vector<std::string>& vars) {
    if (vars.size() > RationalPoly::kMaxVars)
        throw std::invalid_argument("RationalPoly: at most 3 variables");
    return static_cast<int>(vars.size());
}

// Display order: ascending total degree, then descending in the first variable.
bool display_less(const RationalPoly::Exponents& a, const RationalPoly::Exponents& b) {
    int da = a[0] + a[1] + a[2], db = b[0] + b[1] + b[2];
    if (da != db) return da < db;
    return a > b;
}

class Parser {
  public:
    Parser(const std::string& s, const std::vector<std::string>& vars) : s_(s), vars_(vars) {}

    RationalPoly run() {
        RationalPoly r = expr();
        skip();
        if (pos_ != s_.size()) fail("unexpected character");
        return r;
    }

  private:
    [[noreturn]] void fail(const std::string& what) const {
        throw std::invalid_argument("RationalPoly::parse: " + what + " at offset " +
                                    std::to_string(pos_) + " in \"" + s_ + "\"");
    }
    void skip() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }
    bool peek(char c) {
        skip();
        return pos_ < s_.size() && s_[pos_] == c;
    }
    bool starts_factor() {
        skip();
        if (pos_ >= s_.size()) return false;
        char c = s_[pos_];
        return std::isdigit(static_cast<unsigned char>(c)) || std::isalpha(static_cast<unsigned char>(c)) ||
               c == '(';
    }

    RationalPoly expr() {
        RationalPoly acc(vars_);
        bool neg = false;
        if (peek('+')) {
            ++pos_;
        } else if (peek('-')) {
            ++pos_;
            neg = true;
        }
        RationalPoly t = term();
        acc = neg ? -t : t;
        for (;;) {
            if (peek('+')) {
                ++pos_;
                acc += term();
            } else if (peek('-')) {
                ++pos_;
                acc -= term();
            } else {
                break;
            }
        }
        return acc;
    }

    RationalPoly term() {
        RationalPoly acc = factor();
        for (;;) {
            if (peek('*')) {
                ++pos_;
                acc = acc * factor();
            } else if (starts_factor()) {
                acc = acc * factor();
            } else {
                break;
            }
        }
        return acc;
    }

    RationalPoly factor() {
        RationalPoly base = primary();
        if (peek('^')) {
            ++pos_;
            skip();
            std::size_t start = pos_;
            while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
            if (start == pos_) fail("expected exponent");
            base = base.pow(std::stoi(s_.substr(start, pos_ - start)));
        }
        return base;
    }

    mpz_class integer() {
        skip();
        std::size_t start = pos_;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
        if (start == pos_) fail("expected integer");
        return mpz_class(s_.substr(start, pos_ - start));
    }

    RationalPoly primary() {
        skip();
        if (pos_ >= s_.size()) fail("unexpected end");
        char c = s_[pos_];
        if (c == '(') {
            ++pos_;
            RationalPoly r = expr();
            if (!peek(')')) fail("expected ')'");
            ++pos_;
            return r;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            mpq_class v(integer());
            if (peek('/')) {
                ++pos_;
                v /= mpq_class(integer());
            }
            return RationalPoly::constant(vars_, v);
        }
        if (std::isalpha(static_cast<unsigned char>(c))) {
            // Longest variable name that prefixes the input, so "my" reads as m*y.
            int best = -1;
            std::size_t best_len = 0;
            for (std::size_t i = 0; i < vars_.size(); ++i) {
                const std::string& v = vars_[i];
                if (v.size() > best_len && s_.compare(pos_, v.size(), v) == 0) {
                    best = static_cast<int>(i);
                    best_len = v.size();
                }
            }
            if (best < 0) {
                std::size_t end = pos_;
                while (end < s_.size() && std::isalnum(static_cast<unsigned char>(s_[end]))) ++end;
                fail("unknown variable '" + s_.substr(pos_, end - pos_) + "'");
            }
            pos_ += best_len;
            return RationalPoly::variable(vars_, best);
        }
        fail("unexpected character");
    }

    const std::string& s_;
    const std::vector<std::string>& vars_;
    std::size_t pos_ = 0;
};

}  // namespace

RationalPoly::RationalPoly(std::vector<std::string> vars) : vars_(std::move(vars)) { nvars_checked(vars_); }

RationalPoly::RationalPoly(std::vector<std::string> vars, const mpq_class& c) : RationalPoly(std::move(vars)) {
    add_term({0, 0, 0}, c);
}

RationalPoly RationalPoly::constant(std::vector<std::string> vars, const mpq_class& c) {
    return RationalPoly(std::move(vars), c);
}

RationalPoly RationalPoly::variable(std::vector<std::string> vars, int index) {
    RationalPoly r(std::move(vars));
    if (index < 0 || index >= static_cast<int>(r.vars_.size()))
        throw std::invalid_argument("RationalPoly::variable: bad index");
    Exponents e{0, 0, 0};
    e[index] = 1;
    r.add_term(e, 1);
    return r;
}

RationalPoly RationalPoly::monomial(std::vector<std::string> vars, const Exponents& e, const mpq_class& c) {
    RationalPoly r(std::move(vars));
    r.add_term(e, c);
    return r;
}

RationalPoly RationalPoly::parse(const std::string& text, std::vector<std::string> vars) {
    nvars_checked(vars);
    return Parser(text, vars).run();
}

int RationalPoly::var_index(const std::string& name) const {
    auto it = std::find(vars_.begin(), vars_.end(), name);
    if (it == vars_.end()) throw std::invalid_argument("RationalPoly: no variable " + name);
    return static_cast<int>(it - vars_.begin());
}

mpq_class RationalPoly::coefficient(const Exponents& e) const {
    auto it = terms_.find(e);
    return it == terms_.end() ? mpq_class(0) : it->second;
}

void RationalPoly::add_term(const Exponents& e, const mpq_class& c) {
    if (c == 0) return;
    for (int i = 0; i < kMaxVars; ++i) {
        if (e[i] < 0) throw std::invalid_argument("RationalPoly: negative exponent");
        if (e[i] > 0 && i >= static_cast<int>(vars_.size()))
            throw std::invalid_argument("RationalPoly: exponent on undeclared variable");
    }
    mpq_class cc(c);
    cc.canonicalize();
    auto [it, inserted] = terms_.try_emplace(e, cc);
    if (!inserted) {
        it->second += cc;
        if (it->second == 0) terms_.erase(it);
    }
}

int RationalPoly::degree(int var) const {
    int d = -1;
    for (const auto& [e, c] : terms_) d = std::max(d, e[var]);
    return d;
}

int RationalPoly::total_degree() const {
    int d = -1;
    for (const auto& [e, c] : terms_) d = std::max(d, e[0] + e[1] + e[2]);
    return d;
}

RationalPoly RationalPoly::coeff_of(int var, int power) const {
    RationalPoly r(vars_);
    for (const auto& [e, c] : terms_) {
        if (e[var] != power) continue;
        Exponents f = e;
        f[var] = 0;
        r.add_term(f, c);
    }
    return r;
}

void RationalPoly::check_compatible(const RationalPoly& o) {
    if (o.vars_.empty() || vars_ == o.vars_) return;
    if (vars_.empty() && terms_.size() <= 1 && (terms_.empty() || terms_.begin()->first == Exponents{0, 0, 0})) {
        vars_ = o.vars_;
        return;
    }
    throw std::invalid_argument("RationalPoly: variable sets differ");
}

RationalPoly& RationalPoly::operator+=(const RationalPoly& o) {
    check_compatible(o);
    for (const auto& [e, c] : o.terms_) add_term(e, c);
    return *this;
}

RationalPoly& RationalPoly::operator-=(const RationalPoly& o) {
    check_compatible(o);
    for (const auto& [e, c] : o.terms_) add_term(e, -c);
    return *this;
}

RationalPoly operator*(const RationalPoly& a, const RationalPoly& b) {
    RationalPoly r(a.vars_.empty() ? b.vars_ : a.vars_);
    if (!a.vars_.empty() && !b.vars_.empty() && a.vars_ != b.vars_)
        throw std::invalid_argument("RationalPoly: variable sets differ");
    mpq_class t;
    for (const auto& [ea, ca] : a.terms_)
        for (const auto& [eb, cb] : b.terms_) {
            RationalPoly::Exponents e{ea[0] + eb[0], ea[1] + eb[1], ea[2] + eb[2]};
            t = ca * cb;
            r.add_term(e, t);
        }
    return r;
}

RationalPoly& RationalPoly::operator*=(const RationalPoly& o) {
    *this = *this * o;
    return *this;
}

RationalPoly& RationalPoly::operator*=(const mpq_class& c) {
    if (c == 0) {
        terms_.clear();
        return *this;
    }
    mpq_class cc(c);
    cc.canonicalize();
    for (auto& [e, v] : terms_) v *= cc;
    return *this;
}

RationalPoly RationalPoly::operator-() const {
    RationalPoly r = *this;
    for (auto& [e, v] : r.terms_) v = -v;
    return r;
}

bool operator==(const RationalPoly& a, const RationalPoly& b) {
    if (a.terms_.empty() && b.terms_.empty()) return true;
    if (!a.vars_.empty() && !b.vars_.empty() && a.vars_ != b.vars_) return false;
    return a.terms_ == b.terms_;
}

RationalPoly RationalPoly::pow(int n) const {
    if (n < 0) throw std::invalid_argument("RationalPoly::pow: negative exponent");
    RationalPoly result = constant(vars_, 1), base = *this;
    while (n) {
        if (n & 1) result = result * base;
        n >>= 1;
        if (n) base = base * base;
    }
    return result;
}

RationalPoly RationalPoly::derivative(int var) const {
    RationalPoly r(vars_);
    for (const auto& [e, c] : terms_) {
        if (e[var] == 0) continue;
        Exponents f = e;
        --f[var];
        r.add_term(f, c * e[var]);
    }
    return r;
}

RationalPoly RationalPoly::substitute(int var, const RationalPoly& value) const {
    int d = degree(var);
    RationalPoly r(vars_);
    if (d < 0) return r;
    // Horner in var.
    for (int k = d; k >= 0; --k) {
        r = r * value;
        r += coeff_of(var, k);
    }
    return r;
}

RationalPoly RationalPoly::shift(int var, const mpq_class& c) const {
    return substitute(var, variable(vars_, var) + constant(vars_, c));
}

RationalPoly RationalPoly::evaluate_at(int var, const mpq_class& v) const {
    RationalPoly r(vars_);
    mpq_class pw;
    for (const auto& [e, c] : terms_) {
        Exponents f = e;
        f[var] = 0;
        mpz_class num, den;
        mpz_pow_ui(num.get_mpz_t(), v.get_num_mpz_t(), e[var]);
        mpz_pow_ui(den.get_mpz_t(), v.get_den_mpz_t(), e[var]);
        pw = mpq_class(num, den);
        pw.canonicalize();
        r.add_term(f, c * pw);
    }
    return r;
}

mpq_class RationalPoly::evaluate_exact(const std::vector<mpq_class>& point) const {
    if (point.size() < vars_.size()) throw std::invalid_argument("RationalPoly::evaluate_exact: short point");
    mpq_class s = 0, t;
    for (const auto& [e, c] : terms_) {
        t = c;
        for (std::size_t i = 0; i < vars_.size(); ++i)
            for (int k = 0; k < e[i]; ++k) t *= point[i];
        s += t;
    }
    return s;
}

double RationalPoly::evaluate(const std::vector<double>& point) const {
    std::vector<long double> p(point.begin(), point.end());
    return static_cast<double>(evaluate_ld(p));
}

long double RationalPoly::evaluate_ld(const std::vector<long double>& point) const {
    if (point.size() < vars_.size()) throw std::invalid_argument("RationalPoly::evaluate: short point");
    long double s = 0;
    for (const auto& [e, c] : terms_) {
        long double t = static_cast<long double>(c.get_d());
        for (std::size_t i = 0; i < vars_.size(); ++i) t *= std::pow(point[i], static_cast<long double>(e[i]));
        s += t;
    }
    return s;
}

std::vector<mpq_class> RationalPoly::univariate(int var) const {
    int d = std::max(degree(var), 0);
    std::vector<mpq_class> out(d + 1, mpq_class(0));
    for (const auto& [e, c] : terms_) {
        for (int i = 0; i < kMaxVars; ++i)
            if (i != var && e[i] != 0)
                throw std::invalid_argument("RationalPoly::univariate: other variables present");
        out[e[var]] = c;
    }
    return out;
}

mpq_class RationalPoly::content() const {
    if (terms_.empty()) return 0;
    mpz_class g = 0, l = 1;
    for (const auto& [e, c] : terms_) {
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_num_mpz_t());
        mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), c.get_den_mpz_t());
    }
    mpq_class r(abs(g), l);
    r.canonicalize();
    return r;
}

bool RationalPoly::all_coeffs_nonneg() const {
    for (const auto& [e, c] : terms_)
        if (c < 0) return false;
    return true;
}

std::string RationalPoly::to_string() const {
    if (terms_.empty()) return "0";
    std::vector<std::pair<Exponents, mpq_class>> ordered(terms_.begin(), terms_.end());
    std::sort(ordered.begin(), ordered.end(),
              [](const auto& a, const auto& b) { return display_less(a.first, b.first); });
    std::ostringstream os;
    bool first = true;
    for (const auto& [e, c] : ordered) {
        mpq_class mag = abs(c);
        if (first) {
            if (c < 0) os << "-";
        } else {
            os << (c < 0 ? " - " : " + ");
        }
        first = false;
        bool is_const = e[0] == 0 && e[1] == 0 && e[2] == 0;
        bool wrote = false;
        if (mag != 1 || is_const) {
            os << mag.get_str();
            wrote = true;
        }
        for (std::size_t i = 0; i < vars_.size(); ++i) {
            if (e[i] == 0) continue;
            if (wrote) os << " ";
            os << vars_[i];
            if (e[i] > 1) os << "^" << e[i];
            wrote = true;
        }
    }
    return os.str();
}

nlohmann::ordered_json RationalPoly::to_json() const {
    nlohmann::ordered_json j;
    j["vars"] = vars_;
    std::vector<std::pair<Exponents, mpq_class>> ordered(terms_.begin(), terms_.end());
    std::sort(ordered.begin(), ordered.end(),
              [](const auto& a, const auto& b) { return display_less(a.first, b.first); });
    nlohmann::ordered_json terms = nlohmann::ordered_json::array();
    for (const auto& [e, c] : ordered) {
        nlohmann::ordered_json t;
        t["exponents"] = std::vector<int>(e.begin(), e.begin() + static_cast<long>(vars_.size()));
        t["num"] = c.get_num().get_str();
        t["den"] = c.get_den().get_str();
        terms.push_back(std::move(t));
    }
    j["terms"] = std::move(terms);
    return j;
}

}  // namespace vmp
