#pragma once

// Intermediate representation of Rademacher-type formulas
//
//   a(n) = P(n) * sum_cases w * sum_{k <= K, k admitted} k^kp
//          * sum_{0 <= h < k, (h,k) = 1} e^{-2 pi i n h/k} Omega(h,k) * kernel(n, k)
//
// with kernel either I_nu(c sqrt(R(n)) / k) or d/dn (sinh(c sqrt(R(n)) / k) / sqrt(R(n))).

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "circle/expr.hpp"
#include "circle/omega.hpp"
#include "circle/qseries.hpp"
#include "circle/types.hpp"

namespace circle {

/// k restricted by gcd(k, modulus) == value.
struct GcdRestriction {
    std::int64_t modulus = 1;
    std::int64_t value = 1;

    friend bool operator==(const GcdRestriction&, const GcdRestriction&) = default;
};

/// k restricted by k == residue (mod modulus).
struct CongruenceRestriction {
    std::int64_t modulus = 1;
    std::int64_t residue = 0;

    friend bool operator==(const CongruenceRestriction&, const CongruenceRestriction&) = default;
};

class KRestriction {
public:
    KRestriction() = default;
    KRestriction(GcdRestriction r);  // NOLINT
    KRestriction(CongruenceRestriction r);  // NOLINT

    static KRestriction all() { return GcdRestriction{1, 1}; }
    static KRestriction gcd_equals(std::int64_t modulus, std::int64_t value);
    static KRestriction congruent(std::int64_t residue, std::int64_t modulus);

    bool admits(std::int64_t k) const;

    /// gcd(m, k) when it is the same for every admitted k.
    std::optional<std::int64_t> fixed_gcd(std::int64_t m) const;

    const std::variant<GcdRestriction, CongruenceRestriction>& value() const { return value_; }

    std::string to_string() const;
    std::string to_latex() const;

    friend bool operator==(const KRestriction&, const KRestriction&) = default;

private:
    std::variant<GcdRestriction, CongruenceRestriction> value_ = GcdRestriction{};
};

enum class KernelKind { i_series, sinh_derivative };

const char* kernel_kind_name(KernelKind k);

struct BesselKernel {
    Rational order = 1;
    KernelKind kind = KernelKind::i_series;
    /// c in the argument c sqrt(R) / k. Free of n, k, d.
    Expr argument_constant;
    /// R, a linear polynomial in n with rational coefficients.
    Expr radicand;

    friend bool operator==(const BesselKernel&, const BesselKernel&) = default;
};

struct FormulaCase {
    std::int64_t d = 1;
    KRestriction restriction;
    Expr weight = Expr(1);
    OmegaProductDescriptor omega;
    BesselKernel kernel;
    Rational k_power = -1;

    friend bool operator==(const FormulaCase&, const FormulaCase&) = default;
};

enum class FormulaStatus { builtin, conjectured, verified };

const char* status_name(FormulaStatus s);

struct RademacherFormula {
    std::string name;
    Expr prefactor = Expr(1);
    std::vector<FormulaCase> cases;
    /// Registry name of the generating function, if any.
    std::string oracle_name;
    EtaQuotientSpec oracle;
    FormulaStatus status = FormulaStatus::builtin;
    std::string description;
    /// Closed form in d of the per-case weights, display only.
    std::optional<Expr> weight_closed_form;

    friend bool operator==(const RademacherFormula&, const RademacherFormula&) = default;
};

/// R(n) = alpha n + beta, exactly.
struct LinearForm {
    Rational alpha;
    Rational beta;
};

/// Throws std::invalid_argument if R is not linear in n or mentions k or d.
LinearForm linear_form(const Expr& radicand);

/// Structural checks: variable usage, kernel order and kind, restrictions.
/// Throws std::invalid_argument describing the first problem.
void validate(const RademacherFormula& f);

std::string to_latex(const RademacherFormula& f);

nlohmann::json to_json(const RademacherFormula& f);
RademacherFormula formula_from_json(const nlohmann::json& j);
/// Parses text; syntax errors report the byte offset.
RademacherFormula formula_from_string(std::string_view text);

RademacherFormula builtin_formula(std::string_view name);
/// Every name accepted by builtin_formula (hagis_regular_<j> listed for j = 2, 3, 4, 9).
std::vector<std::string> builtin_names();

}  // namespace circle
