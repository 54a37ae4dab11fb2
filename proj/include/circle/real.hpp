#pragma once

#include <mutex>
#include <string>

#include <boost/multiprecision/mpfr.hpp>

#include "circle/types.hpp"

namespace circle {

using Real = boost::multiprecision::mpfr_float;

/// Significant decimal digits of a high-precision evaluation.
struct Precision {
    int digits = 50;

    Precision() = default;
    explicit Precision(int d);

    /// Digits actually carried internally.
    int working_digits() const { return digits + kGuardDigits; }

    static constexpr int kGuardDigits = 15;
    static constexpr int kMinDigits = 15;
};

/// Sets the MPFR default precision for its lifetime. Boost keeps that
/// default process-wide, so scopes are serialized by a recursive mutex;
/// nested scopes on one thread are fine.
class PrecisionScope {
public:
    explicit PrecisionScope(Precision p);
    ~PrecisionScope();

    PrecisionScope(const PrecisionScope&) = delete;
    PrecisionScope& operator=(const PrecisionScope&) = delete;

private:
    std::unique_lock<std::recursive_mutex> lock_;
    unsigned saved_;
};

Real to_real(const Rational& x);
Real real_pi();

/// Fixed-point rendering with `decimals` digits after the point.
std::string format_fixed(const Real& x, int decimals);

/// Nearest integer (ties away from zero).
BigInt round_to_integer(const Real& x);

}  // namespace circle
