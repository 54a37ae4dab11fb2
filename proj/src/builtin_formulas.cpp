// Hand transcriptions of the known Rademacher-type formulas. Per-case weights
// are stored evaluated; zero-weight cases are left out.

#include <charconv>

#include "circle/formula.hpp"
#include "circle/numtheory.hpp"

namespace circle {

namespace {

const Expr n = Expr::var(Var::n);
const Expr pi = Expr::pi();

Expr q(std::int64_t a, std::int64_t b) { return Expr::rational(make_rational(a, b)); }

Expr root(std::int64_t v) {
    std::int64_t s = 0;
    while ((s + 1) * (s + 1) <= v) ++s;
    return s * s == v ? Expr(s) : sqrt(Expr(v));
}

EtaQuotientSpec eta(std::vector<EtaFactor> f) { return EtaQuotientSpec(std::move(f)); }

OmegaProductDescriptor omegas(std::vector<OmegaTerm> t) { return {std::move(t)}; }

FormulaCase i1_case(std::int64_t d, KRestriction r, Expr weight, OmegaProductDescriptor w,
                    Expr c, Expr radicand) {
    FormulaCase fc;
    fc.d = d;
    fc.restriction = r;
    fc.weight = std::move(weight);
    fc.omega = std::move(w);
    fc.kernel = {1, KernelKind::i_series, std::move(c), std::move(radicand)};
    fc.k_power = -1;
    return fc;
}

FormulaCase sinh_case(std::int64_t d, KRestriction r, Expr weight, OmegaProductDescriptor w,
                      Expr c, Expr radicand) {
    FormulaCase fc;
    fc.d = d;
    fc.restriction = r;
    fc.weight = std::move(weight);
    fc.omega = std::move(w);
    fc.kernel = {make_rational(3, 2), KernelKind::sinh_derivative, std::move(c),
                 std::move(radicand)};
    fc.k_power = make_rational(1, 2);
    return fc;
}

RademacherFormula base(std::string name, std::string oracle_name, EtaQuotientSpec spec,
                       Expr prefactor) {
    RademacherFormula f;
    f.name = std::move(name);
    f.description = registry_lookup(oracle_name).description;
    f.oracle_name = std::move(oracle_name);
    f.oracle = std::move(spec);
    f.prefactor = std::move(prefactor);
    f.status = FormulaStatus::builtin;
    return f;
}

const KRestriction odd_k = KRestriction::congruent(1, 2);

RademacherFormula rademacher_p() {
    auto f = base("rademacher_p", "p", eta({{1, 1}}),
                  1 / (pi * sqrt(Expr(2))));
    f.cases.push_back(sinh_case(1, KRestriction::all(), 1, omegas({{1, 1}}),
                                pi * sqrt(q(2, 3)), n - q(1, 24)));
    return f;
}

RademacherFormula hagis_distinct() {
    auto f = base("hagis_distinct", "delta", eta({{1, 1}, {2, -1}}), pi / sqrt(24 * n + 1));
    f.cases.push_back(i1_case(1, odd_k, 1, omegas({{1, 1}, {2, -1}}), pi / (6 * sqrt(Expr(2))),
                              24 * n + 1));
    return f;
}

RademacherFormula hagis_regular(std::int64_t j) {
    if (j < 2) throw std::invalid_argument("hagis_regular needs j >= 2");
    auto f = base("hagis_regular_" + std::to_string(j), "delta_" + std::to_string(j),
                  eta({{1, 1}, {j, -1}}),
                  2 * pi / (Expr(j) * sqrt(24 * n + (j - 1))));
    const Expr d = Expr::var(Var::d);
    f.weight_closed_form = sqrt(d * (Expr(j) - pow(d, 2)));
    for (std::int64_t dd : divisors(j)) {
        if (dd * dd >= j) continue;
        f.cases.push_back(i1_case(dd, KRestriction::gcd_equals(j, dd), root(dd * (j - dd * dd)),
                                  omegas({{1, 1}, {j, -1}}), pi / 6 * sqrt(q(j - dd * dd, j)),
                                  24 * n + (j - 1)));
    }
    return f;
}

RademacherFormula niven() {
    auto f = base("niven", "schur", eta({{1, 1}, {2, -1}, {3, -1}, {6, 1}}), pi / sqrt(36 * n - 3));
    const Expr d = Expr::var(Var::d);
    f.weight_closed_form = sqrt((d - 2) * (d - 3));
    for (std::int64_t dd : {1, 6}) {
        f.cases.push_back(i1_case(dd, KRestriction::gcd_equals(6, dd), root((dd - 2) * (dd - 3)),
                                  omegas({{1, 1}, {6, 1}, {2, -1}, {3, -1}}),
                                  pi * sqrt(Expr(dd)) / (3 * sqrt(Expr(6))), 12 * n - 1));
    }
    return f;
}

RademacherFormula overpartition() {
    auto f = base("overpartition", "overpartition", eta({{1, 2}, {2, -1}}), 1 / (2 * pi));
    f.cases.push_back(sinh_case(1, odd_k, 1, omegas({{1, 2}, {2, -1}}), pi, n));
    return f;
}

RademacherFormula pod() {
    auto f = base("pod", "pod", eta({{1, 1}, {2, -1}, {4, 1}}), 2 / (pi * sqrt(Expr(6))));
    const Expr d = Expr::var(Var::d);
    f.weight_closed_form = sqrt((d - 2) * (5 * d - 17));
    for (std::int64_t dd : {1, 4}) {
        f.cases.push_back(sinh_case(dd, KRestriction::gcd_equals(4, dd),
                                    root((dd - 2) * (5 * dd - 17)),
                                    omegas({{1, 1}, {4, 1}, {2, -1}}), pi * sqrt(Expr(dd)) / 4,
                                    8 * n - 1));
    }
    return f;
}

RademacherFormula s5() {
    auto f = base("s5", "s5", eta({{1, -1}, {2, 2}, {4, -1}}), 2 * pi / sqrt(24 * n + 1));
    f.cases.push_back(i1_case(2, KRestriction::congruent(2, 4), 1,
                              omegas({{2, 2}, {1, -1}, {4, -1}}), pi / (3 * sqrt(Expr(2))),
                              24 * n + 1));
    return f;
}

RademacherFormula s10() {
    auto f = base("s10", "s10", eta({{1, 2}, {2, -3}, {4, 1}}), pi / (4 * sqrt(n)));
    f.cases.push_back(i1_case(1, odd_k, 1, omegas({{1, 2}, {4, 1}, {2, -3}}), pi / sqrt(Expr(2)),
                              n));
    return f;
}

RademacherFormula s24() {
    auto f = base("s24", "s24", eta({{1, 2}, {2, -1}, {3, -2}, {6, 1}}), pi / (3 * sqrt(2 * n)));
    f.cases.push_back(i1_case(1, KRestriction::gcd_equals(6, 1), 1,
                              omegas({{1, 2}, {6, 1}, {2, -1}, {3, -2}}), pi / sqrt(Expr(3)),
                              2 * n));
    return f;
}

RademacherFormula s27() {
    auto f = base("s27", "s27", eta({{1, 1}, {2, -1}, {3, -1}, {4, 1}, {6, 1}, {12, -1}}),
                  pi / (9 * sqrt(4 * n + 1)));
    const Expr d = Expr::var(Var::d);
    f.weight_closed_form = (d - 2) * (2 * d - 5);
    for (std::int64_t dd : {1, 4}) {
        f.cases.push_back(i1_case(dd, KRestriction::gcd_equals(12, dd),
                                  Expr((dd - 2) * (2 * dd - 5)),
                                  omegas({{1, 1}, {4, 1}, {6, 1}, {12, -1}, {3, -1}, {2, -1}}),
                                  pi * sqrt(Expr(dd)) / (2 * sqrt(Expr(3))), 4 * n + 1));
    }
    return f;
}

RademacherFormula s76() {
    auto f = base("s76", "s76", eta({{1, 2}, {2, -1}, {3, -1}, {6, 1}, {9, 1}, {18, -2}}),
                  pi / (9 * sqrt(2 * n + 2)));
    f.cases.push_back(i1_case(1, KRestriction::gcd_equals(18, 1), 1,
                              omegas({{1, 2}, {6, 1}, {9, 1}, {2, -1}, {3, -1}, {18, -2}}),
                              2 * pi / 3, 2 * n + 2));
    return f;
}

RademacherFormula s77() {
    auto f = base("s77", "s77", eta({{1, 2}, {2, -1}, {6, -1}}),
                  pi * sqrt(Expr(2)) / (3 * sqrt(12 * n + 3)));
    f.cases.push_back(i1_case(1, KRestriction::gcd_equals(6, 1), 1,
                              omegas({{1, 2}, {2, -1}, {6, -1}}), pi / 3, 8 * n + 2));
    return f;
}

RademacherFormula s78() {
    auto f = base("s78", "s78", eta({{1, 2}, {2, -1}, {9, -2}, {18, 1}}), pi * sqrt(Expr(2)) / (9 * sqrt(n)));
    f.cases.push_back(i1_case(1, KRestriction::gcd_equals(18, 1), 1,
                              omegas({{1, 2}, {18, 1}, {2, -1}, {9, -2}}), 2 * pi / 3, 2 * n));
    return f;
}

RademacherFormula s107() {
    auto f = base("s107", "s107", eta({{2, 2}, {3, 1}, {4, -1}, {6, -3}, {12, 1}}),
                  2 * pi / (3 * sqrt(24 * n + 3)));
    const Expr d = Expr::var(Var::d);
    f.weight_closed_form = sqrt(4 * d - 3);
    for (std::int64_t j : {1, 2}) {
        f.cases.push_back(i1_case(j, KRestriction::gcd_equals(12, j), root(4 * j - 3),
                                  omegas({{2, 2}, {3, 1}, {12, 1}, {4, -1}, {6, -3}}),
                                  pi * sqrt(Expr(3 * j - 1)) / 6, 8 * n + 1));
    }
    return f;
}

RademacherFormula s110() {
    auto f = base("s110", "s110", eta({{1, 1}, {2, -1}, {4, 1}, {12, -1}}),
                  2 * pi / (9 * sqrt(16 * n + 6)));
    const Expr d = Expr::var(Var::d);
    f.weight_closed_form = sqrt((d - 2) * (7 * d - 13));
    for (std::int64_t dd : {1, 4}) {
        f.cases.push_back(i1_case(dd, KRestriction::gcd_equals(12, dd),
                                  root((dd - 2) * (7 * dd - 13)),
                                  omegas({{1, 1}, {4, 1}, {2, -1}, {12, -1}}),
                                  pi * sqrt(Expr(1 + dd)) / 6, 8 * n + 3));
    }
    return f;
}

RademacherFormula s115() {
    auto f = base("s115", "s115", eta({{1, 1}, {2, -1}, {4, 1}, {9, -1}, {18, 1}, {36, -1}}),
                  pi / (27 * sqrt(n + 1)));
    const Expr d = Expr::var(Var::d);
    f.weight_closed_form = (d - 2) * (2 * d - 5);
    for (std::int64_t dd : {1, 4}) {
        f.cases.push_back(i1_case(dd, KRestriction::gcd_equals(36, dd),
                                  Expr((dd - 2) * (2 * dd - 5)),
                                  omegas({{1, 1}, {4, 1}, {18, 1}, {9, -1}, {2, -1}, {36, -1}}),
                                  2 * sqrt(Expr(dd)) * pi / 3, n + 1));
    }
    return f;
}

}  // namespace

RademacherFormula builtin_formula(std::string_view name) {
    if (name == "rademacher_p") return rademacher_p();
    if (name == "hagis_distinct") return hagis_distinct();
    if (name == "niven") return niven();
    if (name == "overpartition") return overpartition();
    if (name == "pod") return pod();
    if (name == "s5") return s5();
    if (name == "s10") return s10();
    if (name == "s24") return s24();
    if (name == "s27") return s27();
    if (name == "s76") return s76();
    if (name == "s77") return s77();
    if (name == "s78") return s78();
    if (name == "s107") return s107();
    if (name == "s110") return s110();
    if (name == "s115") return s115();
    constexpr std::string_view prefix = "hagis_regular_";
    if (name.starts_with(prefix)) {
        std::int64_t j = 0;
        const auto rest = name.substr(prefix.size());
        const auto [ptr, ec] = std::from_chars(rest.data(), rest.data() + rest.size(), j);
        if (ec == std::errc() && ptr == rest.data() + rest.size() && j >= 2) {
            return hagis_regular(j);
        }
    }
    throw std::invalid_argument("unknown formula '" + std::string(name) + "'");
}

std::vector<std::string> builtin_names() {
    return {"rademacher_p",    "hagis_distinct",   "hagis_regular_2", "hagis_regular_3",
            "hagis_regular_4", "hagis_regular_9",  "niven",           "overpartition",
            "pod",             "s5",               "s10",             "s24",
            "s27",             "s76",              "s77",             "s78",
            "s107",            "s110",             "s115"};
}

}  // namespace circle
