#pragma once

// From an eta quotient to a conjectured Rademacher-type formula: split k by
// gcd(k, L), transform each factor with the eta functional equation, keep
// the cases with a growing exponential, and assemble the Bessel series.

#include <cstdint>
#include <vector>

#include "circle/evaluator.hpp"
#include "circle/formula.hpp"
#include "circle/qseries.hpp"

namespace circle {

struct CaseAnalysis {
    /// Case gcd(k, L) = d.
    std::int64_t d = 1;
    /// gcd(m_j, k) per factor, constant across the case.
    std::vector<std::int64_t> g;
    /// sum e_j g_j^2 / m_j; the 1/z coefficient of log Psi_k is (pi / 12k) C.
    Rational C;
    /// -(sum e_j m_j) / 24; the series pairs with n + kappa.
    Rational kappa;
    /// Net exponent sum e_j.
    std::int64_t r = 0;
    /// prod (m_j / g_j)^{e_j}; the case constant is its square root.
    Rational const_factor_squared;
    OmegaProductDescriptor omega;
    bool contributing = false;
};

/// One entry per divisor d of L, ascending.
std::vector<CaseAnalysis> analyze_cases(const EtaQuotientSpec& spec);

/// Throws std::invalid_argument when no case contributes or r < 0.
RademacherFormula conjecture_formula(const EtaQuotientSpec& spec,
                                     const std::string& oracle_name = "");

/// max over n in [n_lo, n_hi] of |a(n) - b(n)| / max(1, |b(n)|).
Real compare_formulas(const RademacherFormula& a, const RademacherFormula& b, std::int64_t n_lo,
                      std::int64_t n_hi, std::int64_t K, Precision p = default_precision());

}  // namespace circle
