#pragma once

// Exact replay of the positivity chains behind the ratio-bound lemma.
//
// Each chain starts from E = G^m/G^{m-1} - 1 - dG^m/dy with
// G^m = c y / (B_m + alpha y - beta m), clears denominators into
// B_{m-1} X >= R, squares to an element F of Q[y,m][B_m], then repeatedly
// replaces an element vanishing at y = 0 by (multiplier) * d/dy of it.

#include <optional>
#include <string>
#include <vector>

#include "vmp/extension.hpp"
#include "vmp/rational_poly.hpp"
#include "vmp/report.hpp"

namespace vmp {

struct PositivityCertificate {
    enum class Status { all_coeffs_nonneg, sign_indefinite };
    RationalPoly target;
    RationalPoly shifted;  // target with var -> var + low
    int var = 1;
    int low = 0;
    Status status = Status::sign_indefinite;
    std::optional<RationalPoly::Exponents> witness;  // a negative monomial of `shifted`
    mpq_class witness_coeff;

    bool ok() const { return status == Status::all_coeffs_nonneg; }
    nlohmann::ordered_json to_json() const;
};

std::string to_string(PositivityCertificate::Status s);

// Sufficient condition for poly >= 0 on {y >= 0, var >= low}.
PositivityCertificate positivity_for_m_ge(const RationalPoly& poly, int m_low, int var = 1);

struct ChainStep {
    std::string name;
    std::string multiplier;  // how this step was obtained from the previous one
    ExtensionElement value;
    RationalPoly at_zero;  // value at y = 0 with B(0) = beta m
};

struct AnchorCheck {
    std::string name;
    std::string expected;
    std::string actual;
    bool ok = false;
};

struct ChainResult {
    std::string chain;
    std::vector<std::string> vars;
    RationalPoly q;
    std::vector<ChainStep> steps;
    std::vector<std::pair<std::string, RationalPoly>> polys;  // named outputs in derivation order
    std::vector<AnchorCheck> anchors;
    std::vector<std::pair<std::string, PositivityCertificate>> certificates;
    std::vector<std::string> notes;

    const RationalPoly& poly(const std::string& name) const;
    const ChainStep& step(const std::string& name) const;
    bool ok() const;
    nlohmann::ordered_json to_json() const;
};

// The printed polynomials, keyed by name; parsed in the chain's variables.
std::vector<std::pair<std::string, std::string>> printed_polynomials(const std::string& chain);

ChainResult build_chain_k4_p2();
ChainResult build_chain_k8_p2();
ChainResult build_chain_generic_k();
ChainResult build_chain_p3_k4();
// chain in {k4p2, k8p2, generic_k, p3k4}
ChainResult build_chain(const std::string& chain);

// Value at y = 0 after the third 2B-derivative step of the generic-k chain.
RationalPoly optimality_factor_generic_k();

// E_m(y) = G^m/G^{m-1} - 1 - dG^m/dy with G = G_k^{m,p}, in long double.
long double lemma_E(double k, double m, double p, double y);

struct NegativeInterval {
    double m = 0;
    double y_lo = 0;
    double y_hi = 0;
    double worst = 0;
};

struct LemmaSweep {
    double k = 4;
    double p = 2;
    // +1 when the claim is E >= 0, -1 when it is E <= 0.
    int claimed_sign = 1;
    Report report;
    std::vector<NegativeInterval> violations;  // maximal runs where the claim fails

    bool violated(double m) const;
};

// The claim is E >= 0 for k <= 4 and E <= 0 for k > 4.
LemmaSweep numeric_lemma_sweep(double k, double p, const std::vector<double>& m_list,
                               const std::vector<double>& y_grid);

}  // namespace vmp
