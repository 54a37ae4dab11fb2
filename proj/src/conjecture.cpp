#include "circle/conjecture.hpp"

#include "circle/numtheory.hpp"

namespace circle {

namespace {

KRestriction case_restriction(std::int64_t L, std::int64_t d) {
    return L == 1 ? KRestriction::all() : KRestriction::gcd_equals(L, d);
}

Expr linear_expr(const BigInt& alpha, const BigInt& beta) {
    const Expr n = Expr::var(Var::n);
    Expr out = alpha == 1 ? n : Expr::integer(alpha) * n;
    if (beta > 0) out = out + Expr::integer(beta);
    if (beta < 0) out = out - Expr::integer(-beta);
    return out;
}

}  // namespace

std::vector<CaseAnalysis> analyze_cases(const EtaQuotientSpec& spec) {
    if (spec.empty()) throw std::invalid_argument("analyze_cases: empty eta quotient");
    const std::int64_t L = spec.level();
    const Rational kappa = make_rational(-spec.weighted_exponent(), 24);

    std::vector<CaseAnalysis> out;
    for (std::int64_t d : divisors(L)) {
        const KRestriction restriction = case_restriction(L, d);
        CaseAnalysis a;
        a.d = d;
        a.kappa = kappa;
        a.r = spec.net_exponent();
        a.C = 0;
        a.const_factor_squared = 1;
        for (const auto& f : spec.factors()) {
            const std::int64_t g = gcd(f.m, d);
            const auto fixed = restriction.fixed_gcd(f.m);
            if (!fixed || *fixed != g) {
                throw std::logic_error("analyze_cases: gcd(m, k) is not constant on the case");
            }
            a.g.push_back(g);
            a.C += make_rational(f.e * g * g, f.m);
            const Rational ratio = make_rational(f.m / g);
            for (std::int64_t i = 0; i < std::abs(f.e); ++i) {
                if (f.e > 0) a.const_factor_squared *= ratio;
                else a.const_factor_squared /= ratio;
            }
            a.omega.terms.push_back({f.m, f.e});
        }
        a.contributing = a.C > 0;
        out.push_back(std::move(a));
    }
    return out;
}

RademacherFormula conjecture_formula(const EtaQuotientSpec& spec, const std::string& oracle_name) {
    const auto cases = analyze_cases(spec);
    const std::int64_t L = spec.level();
    const std::int64_t r = spec.net_exponent();
    if (r < 0) {
        throw std::invalid_argument("conjecture_formula: net exponent " + std::to_string(r) +
                                    " < 0 gives Bessel order below 1");
    }
    const Rational kappa = make_rational(-spec.weighted_exponent(), 24);
    const BigInt D = denominator(kappa);
    const Rational nu = 1 + make_rational(r, 2);
    const Expr radicand = linear_expr(D, numerator(Rational(kappa * D)));
    const Expr pi = Expr::pi();

    RademacherFormula f;
    f.name = oracle_name.empty() ? "conjectured" : "conjectured_" + oracle_name;
    f.oracle_name = oracle_name;
    f.oracle = spec;
    f.status = FormulaStatus::conjectured;
    f.description = "conjectured from the eta quotient; non-contributing cases dropped";

    if (r == 1) {
        f.prefactor = 1 / pi;
    } else if (r % 2 == 0) {
        const std::int64_t e = (2 + r) / 2;
        f.prefactor = pi / (e == 1 ? sqrt(radicand) : pow(sqrt(radicand), e));
    } else {
        f.prefactor = pi / pow(sqrt(sqrt(radicand)), 2 + r);
    }

    for (const auto& a : cases) {
        if (!a.contributing) continue;
        FormulaCase fc;
        fc.d = a.d;
        fc.restriction = case_restriction(L, a.d);
        fc.omega = a.omega;
        const Rational Dq(D);
        const Surd c = Surd::pi() * Surd::sqrt_of(2 * a.C / (3 * Dq));
        fc.kernel.argument_constant = c.to_expr();
        fc.kernel.radicand = radicand;
        fc.kernel.order = nu;
        if (r == 1) {
            fc.kernel.kind = KernelKind::sinh_derivative;
            fc.k_power = make_rational(1, 2);
            fc.weight = Surd::sqrt_of(a.const_factor_squared * Dq / 2).to_expr();
        } else {
            fc.kernel.kind = KernelKind::i_series;
            fc.k_power = -1;
            const Rational X = a.C * Dq / 24;
            if (r % 2 == 0) {
                const Surd w = Surd::from_rational(2) * Surd::sqrt_of(a.const_factor_squared) *
                               Surd::sqrt_of(X).pow((2 + r) / 2);
                fc.weight = w.to_expr();
            } else {
                fc.weight = 2 * sqrt(Expr::rational(a.const_factor_squared)) *
                            pow(sqrt(sqrt(Expr::rational(X))), 2 + r);
            }
        }
        f.cases.push_back(std::move(fc));
    }
    if (f.cases.empty()) {
        throw std::invalid_argument("conjecture_formula: no case has a positive 1/z coefficient");
    }
    validate(f);
    return f;
}

Real compare_formulas(const RademacherFormula& a, const RademacherFormula& b, std::int64_t n_lo,
                      std::int64_t n_hi, std::int64_t K, Precision p) {
    PrecisionScope scope(p);
    Real worst = 0;
    for (std::int64_t n = n_lo; n <= n_hi; ++n) {
        const Real va = evaluate_formula(a, n, K, p).value;
        const Real vb = evaluate_formula(b, n, K, p).value;
        Real denom = boost::multiprecision::abs(vb);
        if (denom < 1) denom = 1;
        const Real dev = boost::multiprecision::abs(va - vb) / denom;
        if (dev > worst) worst = dev;
    }
    return worst;
}

}  // namespace circle
