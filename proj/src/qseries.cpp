#include "circle/qseries.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "circle/numtheory.hpp"

namespace circle {

namespace {

// In-place multiplication by (1 + sign * q^t).
void mul_binomial(std::vector<BigInt>& a, std::size_t t, int sign) {
    for (std::size_t n = a.size(); n-- > t;) {
        if (sign > 0) a[n] += a[n - t];
        else a[n] -= a[n - t];
    }
}

// In-place division by (1 + sign * q^t).
void div_binomial(std::vector<BigInt>& a, std::size_t t, int sign) {
    for (std::size_t n = t; n < a.size(); ++n) {
        if (sign > 0) a[n] -= a[n - t];
        else a[n] += a[n - t];
    }
}

// Exponents g and signs of (q;q)_inf = sum_j (-1)^j q^{j(3j-1)/2}, g <= limit, g > 0.
std::vector<std::pair<std::size_t, int>> pentagonal_terms(std::size_t limit) {
    std::vector<std::pair<std::size_t, int>> out;
    for (std::int64_t j = 1;; ++j) {
        auto g1 = static_cast<std::size_t>(j * (3 * j - 1) / 2);
        auto g2 = static_cast<std::size_t>(j * (3 * j + 1) / 2);
        if (g1 > limit) break;
        int sign = (j % 2 == 0) ? 1 : -1;
        out.emplace_back(g1, sign);
        if (g2 <= limit) out.emplace_back(g2, sign);
    }
    return out;
}

// a *= (q^m; q^m)_inf
void mul_euler(std::vector<BigInt>& a, std::size_t m, ExpansionMethod method) {
    const std::size_t N = a.size() - 1;
    if (method == ExpansionMethod::naive) {
        for (std::size_t t = m; t <= N; t += m) mul_binomial(a, t, -1);
        return;
    }
    auto terms = pentagonal_terms(N / m);
    for (std::size_t n = N + 1; n-- > 0;) {
        for (auto [g, sign] : terms) {
            std::size_t shift = g * m;
            if (shift > n) break;
            if (sign > 0) a[n] += a[n - shift];
            else a[n] -= a[n - shift];
        }
    }
}

// a /= (q^m; q^m)_inf
void div_euler(std::vector<BigInt>& a, std::size_t m, ExpansionMethod method) {
    const std::size_t N = a.size() - 1;
    if (method == ExpansionMethod::naive) {
        for (std::size_t t = m; t <= N; t += m) div_binomial(a, t, -1);
        return;
    }
    auto terms = pentagonal_terms(N / m);
    for (std::size_t n = 0; n <= N; ++n) {
        for (auto [g, sign] : terms) {
            std::size_t shift = g * m;
            if (shift > n) break;
            if (sign > 0) a[n] -= a[n - shift];
            else a[n] += a[n - shift];
        }
    }
}

void require(bool cond, const std::string& msg) {
    if (!cond) throw std::invalid_argument(msg);
}

}  // namespace

EtaQuotientSpec::EtaQuotientSpec(std::vector<EtaFactor> factors) {
    std::map<std::int64_t, std::int64_t> merged;
    for (const auto& f : factors) {
        require(f.m >= 1, "eta factor multiplier must be >= 1, got " + std::to_string(f.m));
        require(f.e != 0, "eta factor exponent must be nonzero");
        merged[f.m] += f.e;
    }
    for (auto [m, e] : merged) {
        if (e != 0) factors_.push_back({m, e});
    }
}

std::int64_t EtaQuotientSpec::level() const {
    std::vector<std::int64_t> ms;
    for (const auto& f : factors_) ms.push_back(f.m);
    return lcm_all(ms);
}

std::int64_t EtaQuotientSpec::net_exponent() const {
    std::int64_t r = 0;
    for (const auto& f : factors_) r += f.e;
    return r;
}

std::int64_t EtaQuotientSpec::weighted_exponent() const {
    std::int64_t s = 0;
    for (const auto& f : factors_) s += f.e * f.m;
    return s;
}

IntSeries IntSeries::one(std::size_t order) {
    IntSeries s;
    s.coeffs.assign(order + 1, BigInt(0));
    s.coeffs[0] = 1;
    return s;
}

IntSeries IntSeries::truncated(std::size_t order) const {
    if (order > this->order()) {
        throw std::invalid_argument("IntSeries::truncated: order exceeds series length");
    }
    IntSeries out;
    out.coeffs.assign(coeffs.begin(), coeffs.begin() + static_cast<std::ptrdiff_t>(order) + 1);
    return out;
}

IntSeries expand_eta_quotient(const EtaQuotientSpec& spec, std::size_t order,
                              ExpansionMethod method) {
    IntSeries s = IntSeries::one(order);
    for (const auto& f : spec.factors()) {
        auto m = static_cast<std::size_t>(f.m);
        for (std::int64_t i = 0; i < std::abs(f.e); ++i) {
            // f(q^m) = 1/(q^m;q^m)_inf
            if (f.e > 0) div_euler(s.coeffs, m, method);
            else mul_euler(s.coeffs, m, method);
        }
    }
    return s;
}

IntSeries expand_congruence_product(const CongruenceProductSpec& spec, std::size_t order) {
    IntSeries s = IntSeries::one(order);
    for (const auto& f : spec.factors) {
        require(f.modulus >= 1, "congruence factor modulus must be >= 1");
        require(f.residue >= 1 && f.residue <= f.modulus,
                "congruence factor residue must lie in 1..modulus");
        require(f.sign == 1 || f.sign == -1, "congruence factor sign must be +1 or -1");
        require(f.exponent != 0, "congruence factor exponent must be nonzero");
        for (auto t = static_cast<std::size_t>(f.residue); t <= order;
             t += static_cast<std::size_t>(f.modulus)) {
            for (std::int64_t i = 0; i < std::abs(f.exponent); ++i) {
                if (f.exponent > 0) mul_binomial(s.coeffs, t, f.sign);
                else div_binomial(s.coeffs, t, f.sign);
            }
        }
    }
    return s;
}

IntSeries multiply(const IntSeries& a, const IntSeries& b) {
    const std::size_t N = std::min(a.order(), b.order());
    IntSeries out;
    out.coeffs.assign(N + 1, BigInt(0));
    for (std::size_t i = 0; i <= N; ++i) {
        if (a.coeffs[i] == 0) continue;
        for (std::size_t j = 0; i + j <= N; ++j) {
            out.coeffs[i + j] += a.coeffs[i] * b.coeffs[j];
        }
    }
    return out;
}

IntSeries series_reciprocal(const IntSeries& s) {
    if (s.coeffs.empty() || (s.coeffs[0] != 1 && s.coeffs[0] != -1)) {
        throw std::invalid_argument("series_reciprocal: constant term must be +1 or -1");
    }
    const BigInt& c0 = s.coeffs[0];
    const std::size_t N = s.order();
    IntSeries t;
    t.coeffs.assign(N + 1, BigInt(0));
    t.coeffs[0] = c0;  // 1/c0 == c0 for a unit
    for (std::size_t n = 1; n <= N; ++n) {
        BigInt acc = 0;
        for (std::size_t i = 1; i <= n; ++i) {
            if (s.coeffs[i] != 0) acc += s.coeffs[i] * t.coeffs[n - i];
        }
        t.coeffs[n] = -c0 * acc;
    }
    return t;
}

namespace {

CongruenceFactor cf(std::int64_t a, std::int64_t b, int sign, std::int64_t e) {
    return {a, b, sign, e};
}

RegistryEntry regular_entry(std::int64_t j) {
    RegistryEntry r;
    r.name = "delta_" + std::to_string(j);
    r.eta = EtaQuotientSpec({{1, 1}, {j, -1}});
    for (std::int64_t b = 1; b < j; ++b) r.product.factors.push_back(cf(j, b, -1, -1));
    r.description = "j-regular partitions of n (no part divisible by " + std::to_string(j) +
                    "); equals partitions with no part repeated " + std::to_string(j) +
                    " or more times";
    return r;
}

}  // namespace

RegistryEntry registry_lookup(std::string_view name) {
    RegistryEntry r;
    r.name = std::string(name);
    if (name == "p") {
        r.eta = EtaQuotientSpec({{1, 1}});
        r.product.factors = {cf(1, 1, -1, -1)};
        r.description = "unrestricted partitions of n";
    } else if (name == "delta") {
        r.eta = EtaQuotientSpec({{1, 1}, {2, -1}});
        r.product.factors = {cf(1, 1, +1, 1)};
        r.description = "partitions of n into distinct parts (equivalently, into odd parts)";
    } else if (name.starts_with("delta_")) {
        std::int64_t j = 0;
        try {
            j = std::stoll(std::string(name.substr(6)));
        } catch (const std::exception&) {
            throw std::invalid_argument("unknown registry name: " + std::string(name));
        }
        if (j < 2) {
            throw std::invalid_argument("delta_j requires j >= 2");
        }
        return regular_entry(j);
    } else if (name == "schur") {
        r.eta = EtaQuotientSpec({{1, 1}, {2, -1}, {3, -1}, {6, 1}});
        r.product.factors = {cf(6, 1, -1, -1), cf(6, 5, -1, -1)};
        r.description = "partitions of n into parts congruent to +-1 (mod 6); equals Schur's "
                        "distinct parts differing by at least three with no consecutive "
                        "multiples of three";
    } else if (name == "overpartition") {
        r.eta = EtaQuotientSpec({{1, 2}, {2, -1}});
        r.product.factors = {cf(1, 1, +1, 1), cf(1, 1, -1, -1)};
        r.description = "overpartitions of n";
    } else if (name == "pod") {
        r.eta = EtaQuotientSpec({{1, 1}, {2, -1}, {4, 1}});
        r.product.factors = {cf(2, 1, +1, 1), cf(2, 2, -1, -1)};
        r.description = "partitions of n in which no odd part is repeated";
    } else if (name == "s5") {
        r.eta = EtaQuotientSpec({{1, -1}, {2, 2}, {4, -1}});
        r.product.factors = {cf(2, 2, +1, 1), cf(2, 1, -1, 1)};
        r.description = "signed series prod (1+q^{2m})(1-q^{2m-1}); coefficient is "
                        "(-1)^n times the number of partitions into distinct parts";
    } else if (name == "s10") {
        r.eta = EtaQuotientSpec({{1, 2}, {2, -3}, {4, 1}});
        r.product.factors = {cf(2, 1, +1, 1), cf(2, 1, -1, -1)};
        r.description = "overpartitions of n with only odd parts";
    } else if (name == "s24") {
        r.eta = EtaQuotientSpec({{1, 2}, {2, -1}, {3, -2}, {6, 1}});
        r.product.factors = {cf(6, 3, -1, 2), cf(6, 6, -1, 1), cf(1, 1, +1, 1),
                             cf(1, 1, -1, -1)};
        r.description = "coefficients of prod (1-q^{6m-3})^2 (1-q^{6m}) (1+q^m)/(1-q^m)";
    } else if (name == "s27") {
        r.eta = EtaQuotientSpec({{1, 1}, {2, -1}, {3, -1}, {4, 1}, {6, 1}, {12, -1}});
        r.product.factors = {cf(6, 1, +1, 1), cf(6, 5, +1, 1), cf(6, 2, -1, -1),
                             cf(6, 4, -1, -1)};
        r.description = "overpartitions of n where overlined parts are odd nonmultiples of 3 "
                        "and nonoverlined parts are even nonmultiples of 6";
    } else if (name == "s76") {
        r.eta = EtaQuotientSpec({{1, 2}, {2, -1}, {3, -1}, {6, 1}, {9, 1}, {18, -2}});
        r.product.factors = {cf(18, 18, -1, 1), cf(18, 3, -1, 1), cf(18, 15, -1, 1),
                             cf(2, 1, -1, -1), cf(1, 1, -1, -1)};
        r.description = "overpartitions of n where no nonoverlined part is congruent to 0, 3 "
                        "or 15 (mod 18)";
    } else if (name == "s77") {
        r.eta = EtaQuotientSpec({{1, 2}, {2, -1}, {6, -1}});
        r.product.factors = {cf(6, 6, -1, 1), cf(1, 1, +1, 1), cf(1, 1, -1, -1)};
        r.description = "overpartitions of n where no nonoverlined part is a multiple of 6";
    } else if (name == "s78") {
        r.eta = EtaQuotientSpec({{1, 2}, {2, -1}, {9, -2}, {18, 1}});
        r.product.factors = {cf(18, 18, -1, 1), cf(18, 9, -1, 2), cf(1, 1, +1, 1),
                             cf(1, 1, -1, -1)};
        r.description = "coefficients of prod (1-q^{18m}) (1-q^{18m-9})^2 (1+q^m)/(1-q^m)";
    } else if (name == "s107") {
        r.eta = EtaQuotientSpec({{2, 2}, {3, 1}, {4, -1}, {6, -3}, {12, 1}});
        r.product.factors = {cf(6, 6, -1, 1), cf(12, 9, +1, 1), cf(12, 3, +1, 1),
                             cf(4, 2, -1, -1), cf(2, 2, -1, -1)};
        r.description = "overpartitions of n where overlined parts are even or +-3 (mod 12) "
                        "and nonoverlined parts are +-2 (mod 6)";
    } else if (name == "s110") {
        r.eta = EtaQuotientSpec({{1, 1}, {2, -1}, {4, 1}, {12, -1}});
        r.product.factors = {cf(12, 12, -1, 1), cf(4, 2, -1, 1), cf(1, 1, -1, -1)};
        r.description = "partitions of n into parts not congruent to 0, 2, 6, 10 (mod 12)";
    } else if (name == "s115") {
        r.eta = EtaQuotientSpec({{1, 1}, {2, -1}, {4, 1}, {9, -1}, {18, 1}, {36, -1}});
        r.product.factors = {cf(36, 36, -1, 1), cf(36, 27, -1, 1), cf(36, 9, -1, 1),
                             cf(2, 1, -1, -1), cf(4, 4, -1, -1)};
        r.description = "partitions of n into parts not congruent to 0, +-9 (mod 36) nor "
                        "to 2 (mod 4)";
    } else {
        throw std::invalid_argument("unknown registry name: " + std::string(name));
    }
    return r;
}

std::vector<std::string> registry_names() {
    return {"p",       "delta", "delta_2", "delta_3", "delta_4", "delta_9",
            "schur",   "overpartition", "pod", "s5", "s10",     "s24",
            "s27",     "s76",   "s77",     "s78",     "s107",    "s110",
            "s115"};
}

void to_json(nlohmann::json& j, const EtaQuotientSpec& spec) {
    auto arr = nlohmann::json::array();
    for (const auto& f : spec.factors()) arr.push_back({{"m", f.m}, {"e", f.e}});
    j = {{"factors", arr}};
}

void from_json(const nlohmann::json& j, EtaQuotientSpec& spec) {
    std::vector<EtaFactor> factors;
    for (const auto& f : j.at("factors")) {
        factors.push_back({f.at("m").get<std::int64_t>(), f.at("e").get<std::int64_t>()});
    }
    spec = EtaQuotientSpec(std::move(factors));
}

void to_json(nlohmann::json& j, const CongruenceProductSpec& spec) {
    auto arr = nlohmann::json::array();
    for (const auto& f : spec.factors) {
        arr.push_back({{"a", f.modulus}, {"b", f.residue}, {"sign", f.sign}, {"e", f.exponent}});
    }
    j = {{"factors", arr}};
}

void from_json(const nlohmann::json& j, CongruenceProductSpec& spec) {
    spec.factors.clear();
    for (const auto& f : j.at("factors")) {
        spec.factors.push_back({f.at("a").get<std::int64_t>(), f.at("b").get<std::int64_t>(),
                                f.at("sign").get<int>(), f.value("e", std::int64_t{1})});
    }
}

}  // namespace circle
