#pragma once

// High-precision evaluation of truncated Rademacher-type series.

#include <cstdint>

#include "circle/formula.hpp"
#include "circle/real.hpp"

namespace circle {

/// Default digits: the CIRCLE_DIGITS environment variable if set, else 50.
Precision default_precision();

/// I_nu(x) by its ascending series, at the current default precision.
/// nu must be an integer or half-integer >= 1 and x >= 0.
Real bessel_i(const Rational& nu, const Real& x);
Real bessel_i(const Rational& nu, const Real& x, Precision p);

/// sqrt(2/(pi x)) (cosh x - sinh x / x), the closed form of I_{3/2}.
Real bessel_i_three_halves_elementary(const Real& x);

/// d/dn ( sinh((c/k) sqrt(n - a)) / sqrt(n - a) ), differentiated in closed form.
Real sinh_kernel(const Real& n, std::int64_t k, const Real& c, const Real& a);

struct EvalResult {
    Real value;
    BigInt rounded;
    /// Number of (case, k) pairs summed.
    std::int64_t k_used = 0;
    Real imag_residual;
};

/// Sums every case over the admitted k <= K and all coprime h.
EvalResult evaluate_formula(const RademacherFormula& f, std::int64_t n, std::int64_t K,
                            Precision p = default_precision());

/// exp(pi sqrt(2n/3)) / (4 n sqrt(3)).
Real hr_asymptotic(std::int64_t n, Precision p = default_precision());

}  // namespace circle
