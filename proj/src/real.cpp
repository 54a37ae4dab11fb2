#include "circle/real.hpp"

#include <iomanip>
#include <sstream>
#include <stdexcept>

namespace circle {

namespace {

std::recursive_mutex& precision_mutex() {
    static std::recursive_mutex m;
    return m;
}

}  // namespace

Precision::Precision(int d) : digits(d) {
    if (d < kMinDigits) {
        throw std::invalid_argument("precision must be at least " + std::to_string(kMinDigits) +
                                    " digits, got " + std::to_string(d));
    }
}

PrecisionScope::PrecisionScope(Precision p)
    : lock_(precision_mutex()), saved_(Real::default_precision()) {
    Real::default_precision(static_cast<unsigned>(p.working_digits()));
}

PrecisionScope::~PrecisionScope() { Real::default_precision(saved_); }

Real to_real(const Rational& x) {
    Real r;
    mpfr_set_q(r.backend().data(), x.backend().data(), MPFR_RNDN);
    return r;
}

Real real_pi() {
    Real r;
    mpfr_const_pi(r.backend().data(), MPFR_RNDN);
    return r;
}

std::string format_fixed(const Real& x, int decimals) {
    std::ostringstream os;
    os << std::fixed << std::setprecision(decimals) << x;
    std::string s = os.str();
    if (s.starts_with("-")) {
        // Avoid "-0.000" for values that round to zero.
        bool all_zero = s.find_first_not_of("0.", 1) == std::string::npos;
        if (all_zero) s.erase(0, 1);
    }
    return s;
}

BigInt round_to_integer(const Real& x) {
    Real r(x);
    mpfr_round(r.backend().data(), x.backend().data());
    BigInt out;
    mpfr_get_z(out.backend().data(), r.backend().data(), MPFR_RNDN);
    return out;
}

}  // namespace circle
