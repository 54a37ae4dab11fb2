#pragma once

// The eta multiplier omega(h,k) as an exact root of unity, and products of
// omega values attached to an eta quotient.

#include <complex>
#include <cstdint>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "circle/types.hpp"

namespace circle {

/// exp(pi * i * theta) with theta an exact rational reduced into [0, 2).
class ExactRootOfUnity {
public:
    ExactRootOfUnity() = default;
    explicit ExactRootOfUnity(const Rational& theta);

    const Rational& theta() const { return theta_; }

    ExactRootOfUnity operator*(const ExactRootOfUnity& other) const;
    ExactRootOfUnity inverse() const;
    ExactRootOfUnity pow(std::int64_t e) const;

    /// "exp(pi*i * 1/9)"
    std::string to_string() const;

    friend bool operator==(const ExactRootOfUnity&, const ExactRootOfUnity&) = default;

private:
    Rational theta_ = 0;
};

/// omega(h,k) = exp(pi i s(h,k)). In debug builds every call is checked
/// against omega_closed_form.
ExactRootOfUnity omega(std::int64_t h, std::int64_t k);

/// Jacobi-symbol closed form of omega(h,k). Uses the h-odd branch when h is
/// odd and the k-odd branch otherwise.
ExactRootOfUnity omega_closed_form(std::int64_t h, std::int64_t k);

enum class OmegaBranch { h_odd, k_odd };
ExactRootOfUnity omega_closed_form(std::int64_t h, std::int64_t k, OmegaBranch branch);

/// Factor omega(((m/g) h) mod (k/g), k/g)^e with g = gcd(m, k).
struct OmegaTerm {
    std::int64_t m = 1;
    std::int64_t e = 1;

    friend bool operator==(const OmegaTerm&, const OmegaTerm&) = default;
};

struct OmegaProductDescriptor {
    std::vector<OmegaTerm> terms;

    friend bool operator==(const OmegaProductDescriptor&, const OmegaProductDescriptor&) = default;
};

ExactRootOfUnity omega_product(const OmegaProductDescriptor& desc, std::int64_t h,
                               std::int64_t k);

/// |f(e^{2 pi i (iz+h)/k}) - omega(h,k) e^{pi(1/z - z)/12k} sqrt(z) f(e^{2 pi i (i/z+H)/k})|
/// with both f products truncated after n_trunc factors.
double check_eta_functional_equation(std::int64_t h, std::int64_t k, std::complex<double> z,
                                     int n_trunc = 400);

void to_json(nlohmann::json& j, const OmegaProductDescriptor& desc);
void from_json(const nlohmann::json& j, OmegaProductDescriptor& desc);

}  // namespace circle
