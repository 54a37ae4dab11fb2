#include "circle/omega.hpp"

#include <cassert>
#include <numbers>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "circle/numtheory.hpp"

namespace circle {

namespace {

Rational reduce_mod2(const Rational& theta) {
    return theta - 2 * Rational(floor(theta / 2));
}

std::int64_t normalize(std::int64_t h, std::int64_t k) {
    std::int64_t r = h % k;
    return r < 0 ? r + k : r;
}

using cplx = std::complex<long double>;

cplx truncated_f(cplx q, int n_trunc) {
    cplx prod = 1;
    cplx qm = 1;
    for (int m = 1; m <= n_trunc; ++m) {
        qm *= q;
        prod *= 1.0L - qm;
    }
    return 1.0L / prod;
}

}  // namespace

ExactRootOfUnity::ExactRootOfUnity(const Rational& theta) : theta_(reduce_mod2(theta)) {}

ExactRootOfUnity ExactRootOfUnity::operator*(const ExactRootOfUnity& other) const {
    return ExactRootOfUnity(theta_ + other.theta_);
}

ExactRootOfUnity ExactRootOfUnity::inverse() const { return ExactRootOfUnity(-theta_); }

ExactRootOfUnity ExactRootOfUnity::pow(std::int64_t e) const {
    return ExactRootOfUnity(theta_ * e);
}

std::string ExactRootOfUnity::to_string() const {
    return "exp(pi*i * " + circle::to_string(theta_) + ")";
}

ExactRootOfUnity omega(std::int64_t h, std::int64_t k) {
    if (k < 1 || gcd(h, k) != 1) {
        throw std::invalid_argument("omega: requires k >= 1 and gcd(h,k) = 1, got (" +
                                    std::to_string(h) + ", " + std::to_string(k) + ")");
    }
    h = normalize(h, k);
    ExactRootOfUnity w(dedekind_sum(h, k));
#ifndef NDEBUG
    assert(w == omega_closed_form(h, k));
#endif
    return w;
}

ExactRootOfUnity omega_closed_form(std::int64_t h, std::int64_t k, OmegaBranch branch) {
    if (k < 1 || gcd(h, k) != 1) {
        throw std::invalid_argument("omega_closed_form: requires gcd(h,k) = 1");
    }
    h = normalize(h, k);
    const std::int64_t H = neg_mod_inverse(h, k);
    const Rational k_minus_inv = make_rational(k) - make_rational(1, k);
    const Rational tail = k_minus_inv * Rational(BigInt(2 * h - H) + BigInt(h) * h * H) / 12;

    int symbol = 0;
    Rational bracket;
    if (branch == OmegaBranch::h_odd) {
        if (h % 2 == 0) throw std::invalid_argument("omega_closed_form: h-odd branch needs odd h");
        symbol = jacobi_symbol(-k, h);
        bracket = Rational(BigInt(2 - h * k - h), BigInt(4)) + tail;
    } else {
        if (k % 2 == 0) throw std::invalid_argument("omega_closed_form: k-odd branch needs odd k");
        symbol = jacobi_symbol(-h, k);
        bracket = Rational(BigInt(k - 1), BigInt(4)) + tail;
    }
    Rational theta = -bracket;
    if (symbol == -1) theta += 1;
    return ExactRootOfUnity(theta);
}

ExactRootOfUnity omega_closed_form(std::int64_t h, std::int64_t k) {
    h = normalize(h, k < 1 ? 1 : k);
    return omega_closed_form(h, k, h % 2 != 0 ? OmegaBranch::h_odd : OmegaBranch::k_odd);
}

ExactRootOfUnity omega_product(const OmegaProductDescriptor& desc, std::int64_t h,
                               std::int64_t k) {
    if (k < 1 || gcd(h, k) != 1) {
        throw std::invalid_argument("omega_product: requires gcd(h,k) = 1");
    }
    ExactRootOfUnity acc;
    for (const auto& t : desc.terms) {
        if (t.m < 1) throw std::invalid_argument("omega_product: multiplier must be >= 1");
        const std::int64_t g = gcd(t.m, k);
        const std::int64_t kk = k / g;
        const std::int64_t hh = static_cast<std::int64_t>(
            (static_cast<__int128>(t.m / g) * normalize(h, k)) % kk);
        acc = acc * omega(hh, kk).pow(t.e);
    }
    return acc;
}

double check_eta_functional_equation(std::int64_t h, std::int64_t k, std::complex<double> z,
                                     int n_trunc) {
    if (z.real() <= 0) {
        throw std::invalid_argument("check_eta_functional_equation: Re z must be positive");
    }
    const long double pi = std::numbers::pi_v<long double>;
    const cplx I(0, 1);
    const cplx zz(z.real(), z.imag());
    const std::int64_t H = neg_mod_inverse(h, k);
    const auto kl = static_cast<long double>(k);

    const cplx q_left = std::exp(2.0L * pi * I * (I * zz + static_cast<long double>(h)) / kl);
    const cplx q_right =
        std::exp(2.0L * pi * I * (I / zz + static_cast<long double>(H)) / kl);

    const long double theta = omega(h, k).theta().convert_to<long double>();
    const cplx w = std::exp(I * pi * theta);
    const cplx lhs = truncated_f(q_left, n_trunc);
    const cplx rhs = w * std::exp(pi * (1.0L / zz - zz) / (12.0L * kl)) * std::sqrt(zz) *
                     truncated_f(q_right, n_trunc);
    return static_cast<double>(std::abs(lhs - rhs));
}

void to_json(nlohmann::json& j, const OmegaProductDescriptor& desc) {
    auto arr = nlohmann::json::array();
    for (const auto& t : desc.terms) arr.push_back({{"m", t.m}, {"e", t.e}});
    j = {{"terms", arr}};
}

void from_json(const nlohmann::json& j, OmegaProductDescriptor& desc) {
    desc.terms.clear();
    for (const auto& t : j.at("terms")) {
        desc.terms.push_back({t.at("m").get<std::int64_t>(), t.at("e").get<std::int64_t>()});
    }
}

}  // namespace circle
