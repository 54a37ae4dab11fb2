#include <doctest.h>

#include <numeric>

#include <nlohmann/json.hpp>

#include "circle/formula.hpp"
#include "circle/numtheory.hpp"

using namespace circle;

namespace {

const Expr n = Expr::var(Var::n);

std::string format_error(const std::string& text) {
    try {
        formula_from_string(text);
    } catch (const FormatError& e) {
        return e.what();
    }
    return "no error";
}

}  // namespace

TEST_CASE("k restrictions") {
    const auto odd = KRestriction::congruent(1, 2);
    const auto g = KRestriction::gcd_equals(12, 4);
    CHECK(odd.admits(1));
    CHECK_FALSE(odd.admits(4));
    CHECK(g.admits(4));
    CHECK(g.admits(20));
    CHECK(g.admits(8));
    CHECK_FALSE(g.admits(2));
    CHECK_FALSE(g.admits(12));
    CHECK(KRestriction::all().admits(17));
    CHECK(KRestriction::congruent(6, 4) == KRestriction::congruent(2, 4));

    CHECK(odd.fixed_gcd(2) == 1);
    CHECK(odd.fixed_gcd(6) == std::nullopt);
    CHECK(g.fixed_gcd(6) == 2);
    CHECK(g.fixed_gcd(4) == 4);
    CHECK(g.fixed_gcd(8) == std::nullopt);
    CHECK(KRestriction::congruent(2, 4).fixed_gcd(4) == 2);

    CHECK(odd.to_string() == "k = 1 (mod 2)");
    CHECK(g.to_string() == "gcd(k,12) = 4");
    CHECK(odd.to_latex() == "2 \\nmid k");
    CHECK_THROWS_AS(KRestriction::gcd_equals(12, 5), std::invalid_argument);
    CHECK_THROWS_AS(KRestriction::congruent(1, 0), std::invalid_argument);
}

TEST_CASE("linear forms of radicands") {
    const auto a = linear_form(24 * n + 1);
    CHECK(a.alpha == 24);
    CHECK(a.beta == 1);
    const auto b = linear_form(n - Expr::rational(Rational(1, 24)));
    CHECK(b.alpha == 1);
    CHECK(b.beta == Rational(-1, 24));
    CHECK_THROWS_AS(linear_form(n * n), std::invalid_argument);
    CHECK_THROWS_AS(linear_form(sqrt(n)), std::invalid_argument);
    CHECK_THROWS_AS(linear_form(n + Expr::var(Var::k)), std::invalid_argument);
}

TEST_CASE("hagis_distinct transcription") {
    const auto f = builtin_formula("hagis_distinct");
    REQUIRE(f.cases.size() == 1);
    const auto& c = f.cases[0];
    CHECK(c.restriction == KRestriction::congruent(1, 2));
    CHECK(c.kernel.kind == KernelKind::i_series);
    CHECK(c.kernel.order == 1);
    CHECK(c.k_power == -1);
    CHECK(to_surd(c.kernel.argument_constant) == Surd{Rational(1, 12), 1, 2});
    const auto lf = linear_form(c.kernel.radicand);
    CHECK(lf.alpha == 24);
    CHECK(lf.beta == 1);
    CHECK(c.omega == OmegaProductDescriptor{{{1, 1}, {2, -1}}});
    CHECK(f.oracle == registry_lookup("delta").eta);
}

TEST_CASE("rademacher_p transcription") {
    const auto f = builtin_formula("rademacher_p");
    REQUIRE(f.cases.size() == 1);
    const auto& c = f.cases[0];
    CHECK(c.kernel.kind == KernelKind::sinh_derivative);
    CHECK(c.kernel.order == Rational(3, 2));
    CHECK(c.k_power == Rational(1, 2));
    const auto lf = linear_form(c.kernel.radicand);
    CHECK(lf.alpha == 1);
    CHECK(lf.beta == Rational(-1, 24));
    // pi sqrt(2/3) = (pi/3) sqrt(6)
    CHECK(to_surd(c.kernel.argument_constant) == Surd{Rational(1, 3), 1, 6});
}

TEST_CASE("s107 cases carry weights sqrt(4j - 3)") {
    const auto f = builtin_formula("s107");
    REQUIRE(f.cases.size() == 2);
    for (std::int64_t j : {1, 2}) {
        const auto& c = f.cases[static_cast<std::size_t>(j - 1)];
        CHECK(c.d == j);
        CHECK(c.restriction == KRestriction::gcd_equals(12, j));
        CHECK(to_surd(c.weight) == Surd::sqrt_of(4 * j - 3));
    }
}

TEST_CASE("divisor sums keep only the nonzero weights") {
    auto ds = [](const RademacherFormula& f) {
        std::vector<std::int64_t> out;
        for (const auto& c : f.cases) out.push_back(c.d);
        return out;
    };
    CHECK(ds(builtin_formula("s110")) == std::vector<std::int64_t>{1, 4});
    CHECK(ds(builtin_formula("s27")) == std::vector<std::int64_t>{1, 4});
    CHECK(ds(builtin_formula("s115")) == std::vector<std::int64_t>{1, 4});
    CHECK(ds(builtin_formula("niven")) == std::vector<std::int64_t>{1, 6});
    CHECK(ds(builtin_formula("pod")) == std::vector<std::int64_t>{1, 4});
    CHECK(ds(builtin_formula("hagis_regular_9")) == std::vector<std::int64_t>{1});
    CHECK(ds(builtin_formula("hagis_regular_4")) == std::vector<std::int64_t>{1});
    CHECK(ds(builtin_formula("hagis_regular_3")) == std::vector<std::int64_t>{1});
    CHECK(ds(builtin_formula("hagis_regular_10")) == std::vector<std::int64_t>{1, 2});

    // The display closed forms reproduce the stored per-case weights and
    // vanish on the omitted divisors.
    for (const char* name : {"s110", "s27", "s115", "niven", "pod"}) {
        const auto f = builtin_formula(name);
        REQUIRE(f.weight_closed_form);
        const auto kept = ds(f);
        const auto L = f.oracle.level();
        for (std::int64_t d : divisors(L)) {
            Bindings b;
            b.set(Var::d, make_rational(d));
            Real w;
            try {
                w = eval_expr(*f.weight_closed_form, b, Precision(30));
            } catch (const std::domain_error&) {
                // a negative square root: only allowed on omitted divisors
                REQUIRE(std::find(kept.begin(), kept.end(), d) == kept.end());
                continue;
            }
            const auto it = std::find(kept.begin(), kept.end(), d);
            if (it == kept.end()) continue;
            const auto& c = f.cases[static_cast<std::size_t>(it - kept.begin())];
            REQUIRE(boost::multiprecision::abs(w - eval_expr(c.weight, b, Precision(30))) <
                    Real("1e-25"));
        }
    }
}

TEST_CASE("every builtin validates, names are unique, and lookups fail cleanly") {
    const auto names = builtin_names();
    CHECK(names.size() == 19);
    for (const auto& name : names) {
        const auto f = builtin_formula(name);
        CHECK(f.name == name);
        CHECK(f.status == FormulaStatus::builtin);
        CHECK_FALSE(f.oracle.empty());
        CHECK_NOTHROW(validate(f));
    }
    CHECK_THROWS_AS(builtin_formula("nope"), std::invalid_argument);
    CHECK_THROWS_AS(builtin_formula("hagis_regular_1"), std::invalid_argument);
}

TEST_CASE("omega arguments are integral on every admitted k <= 100") {
    for (const auto& name : builtin_names()) {
        const auto f = builtin_formula(name);
        for (const auto& c : f.cases) {
            for (const auto& t : c.omega.terms) {
                const auto g = c.restriction.fixed_gcd(t.m);
                REQUIRE_MESSAGE(g, name, " m=", t.m);
                for (std::int64_t k = 1; k <= 100; ++k) {
                    if (!c.restriction.admits(k)) continue;
                    REQUIRE(std::gcd(t.m, k) == *g);
                }
            }
            for (std::int64_t k = 1; k <= 100; ++k) {
                if (!c.restriction.admits(k)) continue;
                for (std::int64_t h = 0; h < k; ++h) {
                    if (std::gcd(h, k) == 1) CHECK_NOTHROW(omega_product(c.omega, h, k));
                }
            }
        }
    }
}

TEST_CASE("validation rejects malformed formulas") {
    auto f = builtin_formula("hagis_distinct");
    auto bad = f;
    bad.cases[0].kernel.order = Rational(1, 2);
    CHECK_THROWS_AS(validate(bad), std::invalid_argument);
    bad = f;
    bad.cases[0].kernel.order = Rational(5, 4);
    CHECK_THROWS_AS(validate(bad), std::invalid_argument);
    bad = f;
    bad.cases[0].kernel.kind = KernelKind::sinh_derivative;
    CHECK_THROWS_AS(validate(bad), std::invalid_argument);
    bad = f;
    bad.cases[0].weight = n;
    CHECK_THROWS_AS(validate(bad), std::invalid_argument);
    bad = f;
    bad.cases[0].kernel.argument_constant = Expr::var(Var::k);
    CHECK_THROWS_AS(validate(bad), std::invalid_argument);
    bad = f;
    bad.cases[0].kernel.radicand = n * n;
    CHECK_THROWS_AS(validate(bad), std::invalid_argument);
    bad = f;
    bad.prefactor = Expr::var(Var::k);
    CHECK_THROWS_AS(validate(bad), std::invalid_argument);
    bad = f;
    bad.cases.clear();
    CHECK_THROWS_AS(validate(bad), std::invalid_argument);
}

TEST_CASE("json round trip") {
    for (const auto& name : builtin_names()) {
        const auto f = builtin_formula(name);
        const auto j = to_json(f);
        REQUIRE(formula_from_json(j) == f);
        REQUIRE(formula_from_string(j.dump(2)) == f);
    }
    const auto j = to_json(builtin_formula("hagis_distinct"));
    CHECK(j.contains("name"));
    CHECK(j.contains("prefactor"));
    CHECK(j.contains("cases"));
    CHECK(j.contains("oracle"));
    CHECK(j["oracle"]["name"] == "delta");
}

TEST_CASE("malformed formula json is reported with its position") {
    CHECK(format_error("{\"name\": }").find("JSON syntax error at byte 10") == 0);
    auto j = to_json(builtin_formula("hagis_distinct"));
    j["cases"][0].erase("kernel");
    CHECK(format_error(j.dump()) == "missing field 'kernel' at /cases/0");
    j = to_json(builtin_formula("hagis_distinct"));
    j["cases"][0]["kernel"]["kind"] = "cosh";
    CHECK(format_error(j.dump()) == "unknown kernel kind 'cosh' at /cases/0/kernel/kind");
    j = to_json(builtin_formula("hagis_distinct"));
    j["status"] = "proved";
    CHECK(format_error(j.dump()) == "unknown status 'proved' at /status");
    j = to_json(builtin_formula("hagis_distinct"));
    j["cases"] = 3;
    CHECK(format_error(j.dump()) == "expected an array at /cases");
}

TEST_CASE("latex output") {
    const auto p = to_latex(builtin_formula("rademacher_p"));
    CHECK(p.find("\\sinh") != std::string::npos);
    CHECK(p.find("\\frac{d}{dn}") != std::string::npos);
    const auto h = to_latex(builtin_formula("hagis_distinct"));
    CHECK(h.find("I_1") != std::string::npos);
    CHECK(h.find("2 \\nmid k") != std::string::npos);
    CHECK(h.find("\\omega") != std::string::npos);
    const auto s = to_latex(builtin_formula("s110"));
    CHECK(s.find("(k,12)=4") != std::string::npos);
    CHECK(s.find('%') != std::string::npos);
    for (const auto& name : builtin_names()) {
        const auto tex = to_latex(builtin_formula(name));
        REQUIRE(std::count(tex.begin(), tex.end(), '{') == std::count(tex.begin(), tex.end(), '}'));
    }
}
