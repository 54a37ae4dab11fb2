#pragma once

// Elementary number theory and the Farey / Ford-circle geometry behind the
// Rademacher integration path.

#include <compare>
#include <complex>
#include <cstdint>
#include <span>
#include <vector>

#include "circle/types.hpp"

namespace circle {

/// Reduced fraction num/den with den > 0.
class Fraction {
public:
    Fraction() = default;
    Fraction(std::int64_t num, std::int64_t den);

    std::int64_t num() const { return num_; }
    std::int64_t den() const { return den_; }
    Rational value() const { return make_rational(num_, den_); }

    friend bool operator==(const Fraction&, const Fraction&) = default;
    friend std::strong_ordering operator<=>(const Fraction& a, const Fraction& b);

private:
    std::int64_t num_ = 0;
    std::int64_t den_ = 1;
};

/// A complex number with exact rational parts.
struct ExactComplex {
    Rational re;
    Rational im;

    Rational norm_squared() const { return re * re + im * im; }
    std::complex<double> to_complex() const;

    friend bool operator==(const ExactComplex&, const ExactComplex&) = default;
};

/// Cyclic Farey neighbours of h/k in F_N. The predecessor of 0/1 is
/// reported as -1/N and the successor of (N-1)/N as 1/1, i.e. shifted by
/// one period.
struct FareyNeighbors {
    Fraction pred;
    Fraction succ;

    friend bool operator==(const FareyNeighbors&, const FareyNeighbors&) = default;
};

/// End points of the upper Ford arc gamma(h,k), in the tau plane and after
/// the substitution tau = (iz + h)/k.
struct FordArcEndpoints {
    ExactComplex alpha_initial;
    ExactComplex alpha_terminal;
    ExactComplex z_initial;
    ExactComplex z_terminal;
    std::int64_t k_pred = 1;
    std::int64_t k_succ = 1;
};

std::int64_t gcd(std::int64_t a, std::int64_t b);
std::int64_t euler_phi(std::int64_t n);

/// Jacobi symbol (a/n) for odd n >= 1. Any integer a is accepted.
int jacobi_symbol(std::int64_t a, std::int64_t n);

/// The H in [0, k) with h*H = -1 (mod k).
std::int64_t neg_mod_inverse(std::int64_t h, std::int64_t k);

/// Dedekind sum s(h,k), via the reciprocity law (O(log k)).
Rational dedekind_sum(std::int64_t h, std::int64_t k);

/// Dedekind sum straight from the sawtooth definition (O(k)).
Rational dedekind_sum_direct(std::int64_t h, std::int64_t k);

/// Proper Farey fractions of order N: 0 <= h/k < 1, k <= N, ascending.
std::vector<Fraction> farey(std::int64_t N);

FareyNeighbors farey_neighbors(std::int64_t h, std::int64_t k, std::int64_t N);
FareyNeighbors farey_neighbors_scan(std::int64_t h, std::int64_t k, std::int64_t N);
FareyNeighbors farey_neighbors_mediant(std::int64_t h, std::int64_t k, std::int64_t N);

FordArcEndpoints ford_arc_endpoints(std::int64_t h, std::int64_t k, std::int64_t N);

std::vector<std::int64_t> divisors(std::int64_t n);
std::int64_t lcm_all(std::span<const std::int64_t> values);

}  // namespace circle
