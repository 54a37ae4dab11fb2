#pragma once

// Exact integer power series: eta-quotient and congruence-product expansions,
// plus the registry of generating functions the formulas are checked against.

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "circle/types.hpp"

namespace circle {

/// One factor f(q^m)^e, f(q) = prod_{j>=1} (1 - q^j)^{-1}.
struct EtaFactor {
    std::int64_t m = 1;
    std::int64_t e = 1;

    friend bool operator==(const EtaFactor&, const EtaFactor&) = default;
};

/// prod_j f(q^{m_j})^{e_j}, kept sorted by m with duplicates merged.
class EtaQuotientSpec {
public:
    EtaQuotientSpec() = default;
    explicit EtaQuotientSpec(std::vector<EtaFactor> factors);

    const std::vector<EtaFactor>& factors() const { return factors_; }
    bool empty() const { return factors_.empty(); }

    /// lcm of all multipliers (1 for the empty product).
    std::int64_t level() const;
    /// Sum of exponents.
    std::int64_t net_exponent() const;
    /// Sum of e_j * m_j.
    std::int64_t weighted_exponent() const;

    friend bool operator==(const EtaQuotientSpec&, const EtaQuotientSpec&) = default;

private:
    std::vector<EtaFactor> factors_;
};

/// prod_{t >= 1, t = residue (mod modulus)} (1 + sign * q^t)^exponent.
struct CongruenceFactor {
    std::int64_t modulus = 1;
    std::int64_t residue = 1;  // 1..modulus; residue == modulus selects multiples
    int sign = -1;
    std::int64_t exponent = 1;

    friend bool operator==(const CongruenceFactor&, const CongruenceFactor&) = default;
};

struct CongruenceProductSpec {
    std::vector<CongruenceFactor> factors;

    friend bool operator==(const CongruenceProductSpec&, const CongruenceProductSpec&) = default;
};

/// Coefficients a(0..N).
struct IntSeries {
    std::vector<BigInt> coeffs;

    std::size_t order() const { return coeffs.empty() ? 0 : coeffs.size() - 1; }
    const BigInt& operator[](std::size_t i) const { return coeffs[i]; }

    static IntSeries one(std::size_t order);
    IntSeries truncated(std::size_t order) const;

    friend bool operator==(const IntSeries&, const IntSeries&) = default;
};

enum class ExpansionMethod {
    naive,       // factor-by-factor Euler product
    pentagonal,  // sparse pentagonal-number series for (q^m; q^m)_inf
};

IntSeries expand_eta_quotient(const EtaQuotientSpec& spec, std::size_t order,
                              ExpansionMethod method = ExpansionMethod::pentagonal);

IntSeries expand_congruence_product(const CongruenceProductSpec& spec, std::size_t order);

IntSeries multiply(const IntSeries& a, const IntSeries& b);

/// 1/s to the order of s. The constant term must be +1 or -1.
IntSeries series_reciprocal(const IntSeries& s);

struct RegistryEntry {
    std::string name;
    EtaQuotientSpec eta;
    CongruenceProductSpec product;
    std::string description;
};

/// Known generating functions: p, delta, delta_<j>, schur, overpartition,
/// pod, s5, s10, s24, s27, s76, s77, s78, s107, s110, s115.
RegistryEntry registry_lookup(std::string_view name);

/// Every fixed registry name plus delta_2, delta_3, delta_4, delta_9.
std::vector<std::string> registry_names();

void to_json(nlohmann::json& j, const EtaQuotientSpec& spec);
void from_json(const nlohmann::json& j, EtaQuotientSpec& spec);
void to_json(nlohmann::json& j, const CongruenceProductSpec& spec);
void from_json(const nlohmann::json& j, CongruenceProductSpec& spec);

}  // namespace circle
