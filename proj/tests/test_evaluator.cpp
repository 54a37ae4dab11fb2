#include <doctest.h>

#include <cstdlib>
#include <set>

#include "circle/evaluator.hpp"
#include "circle/qseries.hpp"
#include "oracles.hpp"

using namespace circle;
using boost::multiprecision::abs;

namespace {

Real pi() { return boost::math::constants::pi<Real>(); }

Real rel(const Real& a, const Real& b) { return abs(a - b) / abs(b); }

Real tenth_power(int e) { return boost::multiprecision::pow(Real(10), e); }

// sinh((c/k) sqrt(n - a)) / sqrt(n - a)
Real sinh_ratio(const Real& n, std::int64_t k, const Real& c, const Real& a) {
    const Real y = boost::multiprecision::sqrt(n - a);
    return boost::multiprecision::sinh(c / k * y) / y;
}

}  // namespace

TEST_CASE("bessel I at zero and at 2") {
    PrecisionScope scope{Precision(60)};
    CHECK(bessel_i(1, Real(0)) == 0);
    CHECK(bessel_i(Rational(3, 2), Real(0)) == 0);
    const Real got = bessel_i(1, Real(2));
    CHECK(format_fixed(got, 16) == "1.5906368546373291");
    CHECK(rel(got, oracle::bessel_i_integer(1, Real(2))) < Real("1e-58"));
}

TEST_CASE("integer orders match the integral representation") {
    PrecisionScope scope{Precision(50)};
    for (int nu : {1, 2, 3, 5}) {
        for (const char* x : {"0.01", "0.5", "2", "7.25", "30"}) {
            REQUIRE_MESSAGE(rel(bessel_i(nu, Real(x)), oracle::bessel_i_integer(nu, Real(x), 400)) <
                                Real("1e-48"),
                            nu, " ", x);
        }
    }
}

TEST_CASE("half-integer orders match their elementary forms") {
    for (int digits : {20, 50, 80}) {
        PrecisionScope scope{Precision(digits)};
        for (const char* xs : {"0.1", "1", "10", "30"}) {
            const Real x(xs);
            const Real three_halves = bessel_i(Rational(3, 2), x);
            REQUIRE(rel(three_halves, bessel_i_three_halves_elementary(x)) <
                    tenth_power(-(digits - 5)));
            const Real five_halves = boost::multiprecision::sqrt(2 / (pi() * x)) *
                                     ((1 + 3 / (x * x)) * boost::multiprecision::sinh(x) -
                                      3 / x * boost::multiprecision::cosh(x));
            REQUIRE(rel(bessel_i(Rational(5, 2), x), five_halves) < tenth_power(-(digits - 5)));
        }
    }
    PrecisionScope scope{Precision(50)};
    const Real one(1);
    const Real closed = boost::multiprecision::sqrt(2 / pi()) *
                        (boost::multiprecision::cosh(one) - boost::multiprecision::sinh(one));
    CHECK(rel(bessel_i(Rational(3, 2), one), closed) < Real("1e-40"));
}

TEST_CASE("bessel domain errors") {
    PrecisionScope scope{Precision(20)};
    CHECK_THROWS_AS(bessel_i(Rational(1, 2), Real(1)), std::domain_error);
    CHECK_THROWS_AS(bessel_i(Rational(4, 3), Real(1)), std::domain_error);
    CHECK_THROWS_AS(bessel_i(1, Real(-1)), std::domain_error);
    CHECK_THROWS_AS(bessel_i_three_halves_elementary(Real(0)), std::domain_error);
}

TEST_CASE("sinh kernel matches a finite difference") {
    PrecisionScope scope{Precision(50)};
    const Real c = pi() * boost::multiprecision::sqrt(Real(2) / 3);
    const Real a = Real(1) / 24;
    const Real n = 5;
    const Real h("1e-8");
    // Five-point central difference; truncation error is O(h^4).
    const Real fd = (-sinh_ratio(n + 2 * h, 1, c, a) + 8 * sinh_ratio(n + h, 1, c, a) -
                     8 * sinh_ratio(n - h, 1, c, a) + sinh_ratio(n - 2 * h, 1, c, a)) /
                    (12 * h);
    CHECK(rel(sinh_kernel(n, 1, c, a), fd) < Real("1e-30"));
    for (std::int64_t k : {2, 3, 7}) {
        const Real fdk = (-sinh_ratio(n + 2 * h, k, c, a) + 8 * sinh_ratio(n + h, k, c, a) -
                          8 * sinh_ratio(n - h, k, c, a) + sinh_ratio(n - 2 * h, k, c, a)) /
                         (12 * h);
        CHECK(rel(sinh_kernel(n, k, c, a), fdk) < Real("1e-30"));
    }
}

TEST_CASE("sinh kernel and I_{3/2}") {
    PrecisionScope scope{Precision(50)};
    // With c = 1, k = 1, a = 0 and n = z^2 the kernel is (sinh z / z)' / (2z).
    const Real z = 3;
    const Real via_kernel =
        boost::multiprecision::sqrt(2 * z / pi()) * 2 * z * sinh_kernel(z * z, 1, Real(1), Real(0));
    CHECK(rel(via_kernel, bessel_i(Rational(3, 2), z)) < Real("1e-30"));

    const Real unit = sinh_kernel(Real(1), 1, Real(1), Real(0));
    CHECK(rel(unit, boost::multiprecision::exp(Real(-1)) / 2) < Real("1e-45"));
    CHECK(format_fixed(unit, 8) == "0.18393972");

    CHECK_THROWS_AS(sinh_kernel(Real(1), 1, Real(1), Real(1)), std::domain_error);
    CHECK_THROWS_AS(sinh_kernel(Real(2), 0, Real(1), Real(1)), std::domain_error);
}

TEST_CASE("evaluation examples") {
    const Precision p(50);
    const auto rp = builtin_formula("rademacher_p");
    const auto r5 = evaluate_formula(rp, 5, 10, p);
    CHECK(r5.rounded == 7);
    CHECK(r5.k_used == 10);

    const auto hd = builtin_formula("hagis_distinct");
    const auto r100 = evaluate_formula(hd, 100, 10, p);
    CHECK(r100.rounded == 444793);
    CHECK(r100.k_used == 5);
    CHECK(abs(r100.value - 444793) < Real("0.211"));

    const auto r200 = evaluate_formula(rp, 200, 40, p);
    CHECK(r200.rounded == BigInt("3972999029388"));
    CHECK(abs(r200.value - Real(BigInt("3972999029388"))) < Real("0.01"));
}

TEST_CASE("p(n) for small n at K = 40") {
    const auto rp = builtin_formula("rademacher_p");
    const auto p = oracle::partitions(60);
    for (std::int64_t n = 1; n <= 60; ++n) {
        const auto r = evaluate_formula(rp, n, 40, Precision(50));
        REQUIRE_MESSAGE(r.rounded == p[static_cast<std::size_t>(n)], n);
        REQUIRE(abs(r.value - r.rounded) <= Real("0.5"));
    }
}

TEST_CASE("evaluation errors carry context") {
    const auto hd = builtin_formula("hagis_distinct");
    CHECK_THROWS_AS(evaluate_formula(hd, 0, 10, Precision(20)), std::invalid_argument);
    CHECK_THROWS_AS(evaluate_formula(hd, 5, 0, Precision(20)), std::invalid_argument);
    auto bad = hd;
    bad.cases[0].kernel.radicand = Expr::var(Var::n) - 5;
    try {
        evaluate_formula(bad, 2, 10, Precision(20));
        FAIL("expected a domain error");
    } catch (const std::domain_error& e) {
        const std::string msg = e.what();
        CHECK(msg.find("hagis_distinct") != std::string::npos);
        CHECK(msg.find("n=2") != std::string::npos);
        CHECK(msg.find("d=1") != std::string::npos);
    }
}

TEST_CASE("the h-sums are real") {
    const Precision p(50);
    for (const auto& name : builtin_names()) {
        const auto f = builtin_formula(name);
        for (std::int64_t n = 1; n <= 100; ++n) {
            const auto r = evaluate_formula(f, n, 10, p);
            REQUIRE_MESSAGE(r.imag_residual < Real("1e-25"), name, " n=", n);
        }
    }
}

TEST_CASE("longer truncations do not move away from the exact value") {
    // The I_1 tails oscillate before they decay: for these three the error at
    // K = 20 exceeds the error at K = 5. They still converge, so for them the
    // comparison is made against K = 400 instead.
    const std::set<std::pair<std::string, std::int64_t>> oscillating = {
        {"hagis_distinct", 50}, {"hagis_regular_2", 50}, {"hagis_regular_3", 100}};
    for (const auto& name : builtin_names()) {
        const auto f = builtin_formula(name);
        const auto exact = expand_eta_quotient(f.oracle, 100);
        for (std::int64_t n : {50, 100}) {
            const Real target(exact[static_cast<std::size_t>(n)]);
            auto error = [&](std::int64_t K) {
                return Real(abs(evaluate_formula(f, n, K, Precision(40)).value - target));
            };
            const Real e5 = error(5);
            const Real e20 = error(20);
            if (oscillating.count({name, n}) == 0) {
                CHECK_MESSAGE(e20 <= e5 + Real("1e-6"), name, " n=", n);
                continue;
            }
            CHECK_MESSAGE(e20 > e5, name, " n=", n, " no longer oscillates");
            const Real e400 = error(400);
            CHECK_MESSAGE(e400 < e5, name, " n=", n);
            CHECK_MESSAGE(e400 < e20 / 4, name, " n=", n);
        }
    }
}

TEST_CASE("doubling the precision moves values only in the last digits") {
    for (const auto& name : builtin_names()) {
        const auto f = builtin_formula(name);
        for (std::int64_t n : {3, 100}) {
            const Real lo = evaluate_formula(f, n, 10, Precision(50)).value;
            const Real hi = evaluate_formula(f, n, 10, Precision(100)).value;
            PrecisionScope scope{Precision(100)};
            REQUIRE_MESSAGE(rel(lo, hi) < Real("1e-40"), name, " n=", n);
        }
    }
}

TEST_CASE("leading-order asymptotic") {
    const auto p = oracle::partitions(200);
    PrecisionScope scope{Precision(30)};
    auto ratio = [&](std::int64_t n) {
        return Real(p[static_cast<std::size_t>(n)]) / hr_asymptotic(n, Precision(30));
    };
    CHECK(abs(ratio(50) - 1) < abs(ratio(10) - 1));
    CHECK(abs(ratio(100) - 1) < abs(ratio(50) - 1));
    const Real r200 = hr_asymptotic(200, Precision(30)) / Real(BigInt("3972999029388"));
    CHECK(r200 > Real("0.95"));
    CHECK(r200 < Real("1.05"));
    const Real at1 = boost::multiprecision::exp(pi() * boost::multiprecision::sqrt(Real(2) / 3)) /
                     (4 * boost::multiprecision::sqrt(Real(3)));
    CHECK(rel(hr_asymptotic(1, Precision(30)), at1) < Real("1e-29"));
    CHECK_THROWS_AS(hr_asymptotic(0), std::invalid_argument);
}

TEST_CASE("default precision from the environment") {
    ::unsetenv("CIRCLE_DIGITS");
    CHECK(default_precision().digits == 50);
    ::setenv("CIRCLE_DIGITS", "80", 1);
    CHECK(default_precision().digits == 80);
    ::setenv("CIRCLE_DIGITS", "eighty", 1);
    CHECK_THROWS_AS(default_precision(), std::invalid_argument);
    ::setenv("CIRCLE_DIGITS", "5", 1);
    CHECK_THROWS_AS(default_precision(), std::invalid_argument);
    ::unsetenv("CIRCLE_DIGITS");
}
