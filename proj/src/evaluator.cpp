#include "circle/evaluator.hpp"

#include <charconv>
#include <cstdlib>
#include <cstring>

#include "circle/numtheory.hpp"

namespace circle {

namespace {

Real pow_rational(const Real& x, const Rational& e) {
    if (denominator(e) == 1) {
        Real out;
        mpfr_pow_si(out.backend().data(), x.backend().data(),
                    numerator(e).convert_to<long>(), MPFR_RNDN);
        return out;
    }
    if (denominator(e) == 2) {
        Real s = boost::multiprecision::sqrt(x);
        Real out;
        mpfr_pow_si(out.backend().data(), s.backend().data(),
                    numerator(e).convert_to<long>(), MPFR_RNDN);
        return out;
    }
    return Real(boost::multiprecision::pow(x, to_real(e)));
}

Real gamma(const Real& x) {
    Real out;
    mpfr_gamma(out.backend().data(), x.backend().data(), MPFR_RNDN);
    return out;
}

// d/dR ( sinh(a sqrt(R)) / sqrt(R) ) at sqrt(R) = y.
Real sinh_derivative_in_radicand(const Real& a, const Real& y) {
    const Real ay = a * y;
    return (a * boost::multiprecision::cosh(ay) / y - boost::multiprecision::sinh(ay) / (y * y)) /
           (2 * y);
}

}  // namespace

Precision default_precision() {
    const char* env = std::getenv("CIRCLE_DIGITS");
    if (env == nullptr || *env == '\0') return Precision{};
    int digits = 0;
    const char* end = env + std::strlen(env);
    const auto [ptr, ec] = std::from_chars(env, end, digits);
    if (ec != std::errc() || ptr != end) {
        throw std::invalid_argument(std::string("CIRCLE_DIGITS is not an integer: ") + env);
    }
    return Precision(digits);
}

Real bessel_i(const Rational& nu, const Real& x) {
    if (nu < 1 || denominator(Rational(nu * 2)) != 1) {
        throw std::domain_error("bessel_i: order must be an integer or half-integer >= 1, got " +
                                to_string(nu));
    }
    if (x < 0) throw std::domain_error("bessel_i: argument must be nonnegative");
    if (x == 0) return Real(0);

    const Real nu_r = to_real(nu);
    const Real half = x / 2;
    const Real quarter_sq = half * half;
    Real term = pow_rational(half, nu) / gamma(nu_r + 1);
    Real sum = term;
    Real eps;
    mpfr_set_ui_2exp(eps.backend().data(), 1, -static_cast<long>(mpfr_get_prec(sum.backend().data())) - 8,
                     MPFR_RNDN);
    for (long m = 1;; ++m) {
        term *= quarter_sq / (m * (nu_r + m));
        sum += term;
        if (m > half && term < eps * sum) break;
    }
    return sum;
}

Real bessel_i(const Rational& nu, const Real& x, Precision p) {
    PrecisionScope scope(p);
    return bessel_i(nu, Real(x));
}

Real bessel_i_three_halves_elementary(const Real& x) {
    if (x <= 0) throw std::domain_error("elementary I_{3/2} needs x > 0");
    return boost::multiprecision::sqrt(2 / (real_pi() * x)) *
           (boost::multiprecision::cosh(x) - boost::multiprecision::sinh(x) / x);
}

Real sinh_kernel(const Real& n, std::int64_t k, const Real& c, const Real& a) {
    if (k < 1) throw std::domain_error("sinh_kernel: k must be positive");
    if (n <= a) throw std::domain_error("sinh_kernel: needs n > shift");
    const Real y = boost::multiprecision::sqrt(n - a);
    return sinh_derivative_in_radicand(c / k, y);
}

EvalResult evaluate_formula(const RademacherFormula& f, std::int64_t n, std::int64_t K,
                            Precision p) {
    if (n < 1) throw std::invalid_argument("evaluate_formula: n must be >= 1");
    if (K < 1) throw std::invalid_argument("evaluate_formula: K must be >= 1");
    validate(f);

    PrecisionScope scope(p);
    Bindings b;
    b.set(Var::n, make_rational(n));
    const Real pi = real_pi();

    Real re_total = 0;
    Real im_total = 0;
    EvalResult result;

    for (const auto& c : f.cases) {
        const std::string context = f.name + " (n=" + std::to_string(n) + ", case d=" +
                                    std::to_string(c.d);
        const LinearForm lf = linear_form(c.kernel.radicand);
        const Rational radicand = lf.alpha * n + lf.beta;
        if (radicand <= 0) {
            throw std::domain_error(context + "): radicand " + to_string(radicand) +
                                    " is not positive");
        }
        const Real y = boost::multiprecision::sqrt(to_real(radicand));
        const Real weight = eval_expr(c.weight, b);
        const Real constant = eval_expr(c.kernel.argument_constant, b);
        const Real alpha = to_real(lf.alpha);

        for (std::int64_t k = 1; k <= K; ++k) {
            if (!c.restriction.admits(k)) continue;
            ++result.k_used;
            Real kernel;
            try {
                if (c.kernel.kind == KernelKind::i_series) {
                    kernel = bessel_i(c.kernel.order, Real(constant * y / k));
                } else {
                    kernel = alpha * sinh_derivative_in_radicand(Real(constant / k), y);
                }
            } catch (const std::domain_error& e) {
                throw std::domain_error(context + ", k=" + std::to_string(k) + "): " + e.what());
            }

            Real re = 0;
            Real im = 0;
            for (std::int64_t h = 0; h < k; ++h) {
                if (gcd(h, k) != 1) continue;
                const ExactRootOfUnity phase =
                    omega_product(c.omega, h, k) *
                    ExactRootOfUnity(Rational(BigInt(-2) * n * h, BigInt(k)));
                const Real angle = pi * to_real(phase.theta());
                re += boost::multiprecision::cos(angle);
                im += boost::multiprecision::sin(angle);
            }
            const Real scale = weight * pow_rational(Real(k), c.k_power) * kernel;
            re_total += scale * re;
            im_total += scale * im;
        }
    }

    const Real prefactor = eval_expr(f.prefactor, b);
    result.value = prefactor * re_total;
    result.imag_residual = boost::multiprecision::abs(prefactor * im_total);
    result.rounded = round_to_integer(result.value);
    return result;
}

Real hr_asymptotic(std::int64_t n, Precision p) {
    if (n < 1) throw std::invalid_argument("hr_asymptotic: n must be >= 1");
    PrecisionScope scope(p);
    const Real nn = n;
    return boost::multiprecision::exp(real_pi() * boost::multiprecision::sqrt(2 * nn / 3)) /
           (4 * nn * boost::multiprecision::sqrt(Real(3)));
}

}  // namespace circle
