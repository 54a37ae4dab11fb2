#pragma once

#include <cstdint>
#include <string>

#include <boost/multiprecision/gmp.hpp>

namespace circle {

using BigInt = boost::multiprecision::mpz_int;
using Rational = boost::multiprecision::mpq_rational;

inline Rational make_rational(std::int64_t num, std::int64_t den = 1) {
    return Rational(BigInt(num), BigInt(den));
}

inline BigInt floor_div(const BigInt& a, const BigInt& b) {
    BigInt q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) {
        --q;
    }
    return q;
}

/// Floor of an exact rational.
inline BigInt floor(const Rational& x) {
    return floor_div(numerator(x), denominator(x));
}

/// "p/q" or "p" when the denominator is one.
inline std::string to_string(const Rational& x) {
    if (denominator(x) == 1) {
        return numerator(x).str();
    }
    return numerator(x).str() + "/" + denominator(x).str();
}

}  // namespace circle
