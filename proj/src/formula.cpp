#include "circle/formula.hpp"

#include <numeric>
#include <sstream>

#include <nlohmann/json.hpp>

#include "circle/numtheory.hpp"

namespace circle {

using nlohmann::json;

KRestriction::KRestriction(GcdRestriction r) : value_(r) {}
KRestriction::KRestriction(CongruenceRestriction r) : value_(r) {}

KRestriction KRestriction::gcd_equals(std::int64_t modulus, std::int64_t value) {
    if (modulus < 1 || value < 1 || modulus % value != 0) {
        throw std::invalid_argument("gcd restriction needs value | modulus, got gcd(k," +
                                    std::to_string(modulus) + ") = " + std::to_string(value));
    }
    return GcdRestriction{modulus, value};
}

KRestriction KRestriction::congruent(std::int64_t residue, std::int64_t modulus) {
    if (modulus < 1) throw std::invalid_argument("congruence restriction needs modulus >= 1");
    std::int64_t r = residue % modulus;
    if (r < 0) r += modulus;
    return CongruenceRestriction{modulus, r};
}

bool KRestriction::admits(std::int64_t k) const {
    if (const auto* g = std::get_if<GcdRestriction>(&value_)) {
        return gcd(k, g->modulus) == g->value;
    }
    const auto& c = std::get<CongruenceRestriction>(value_);
    std::int64_t r = k % c.modulus;
    if (r < 0) r += c.modulus;
    return r == c.residue;
}

std::optional<std::int64_t> KRestriction::fixed_gcd(std::int64_t m) const {
    // Both gcd(m, k) and admits(k) are periodic, so one common period decides it.
    const std::int64_t modulus = std::visit([](const auto& r) { return r.modulus; }, value_);
    const std::int64_t period = std::lcm(m, modulus);
    std::optional<std::int64_t> seen;
    for (std::int64_t k = 1; k <= period; ++k) {
        if (!admits(k)) continue;
        const std::int64_t g = gcd(m, k);
        if (seen && *seen != g) return std::nullopt;
        seen = g;
    }
    return seen;
}

std::string KRestriction::to_string() const {
    if (const auto* g = std::get_if<GcdRestriction>(&value_)) {
        if (g->modulus == 1) return "all k";
        return "gcd(k," + std::to_string(g->modulus) + ") = " + std::to_string(g->value);
    }
    const auto& c = std::get<CongruenceRestriction>(value_);
    return "k = " + std::to_string(c.residue) + " (mod " + std::to_string(c.modulus) + ")";
}

std::string KRestriction::to_latex() const {
    if (const auto* g = std::get_if<GcdRestriction>(&value_)) {
        if (g->modulus == 1) return "k \\geq 1";
        return "(k," + std::to_string(g->modulus) + ")=" + std::to_string(g->value);
    }
    const auto& c = std::get<CongruenceRestriction>(value_);
    if (c.modulus == 2 && c.residue == 1) return "2 \\nmid k";
    return "k \\equiv " + std::to_string(c.residue) + " \\pmod{" + std::to_string(c.modulus) + "}";
}

const char* kernel_kind_name(KernelKind k) {
    return k == KernelKind::i_series ? "i_series" : "sinh_derivative";
}

const char* status_name(FormulaStatus s) {
    switch (s) {
        case FormulaStatus::builtin: return "builtin";
        case FormulaStatus::conjectured: return "CONJECTURED";
        case FormulaStatus::verified: return "verified";
    }
    return "?";
}

LinearForm linear_form(const Expr& radicand) {
    if (radicand.mentions(Var::k) || radicand.mentions(Var::d)) {
        throw std::invalid_argument("radicand may only depend on n: " + to_string(radicand));
    }
    Rational v[4];
    for (int i = 0; i < 4; ++i) {
        auto r = eval_exact(radicand, Bindings{make_rational(i), std::nullopt, std::nullopt});
        if (!r) throw std::invalid_argument("radicand is not rational: " + to_string(radicand));
        v[i] = *r;
    }
    const Rational alpha = v[1] - v[0];
    if (v[2] - v[1] != alpha || v[3] - v[2] != alpha) {
        throw std::invalid_argument("radicand is not linear in n: " + to_string(radicand));
    }
    return {alpha, v[0]};
}

namespace {

bool only_mentions_n(const Expr& e) { return !e.mentions(Var::k) && !e.mentions(Var::d); }

bool is_constant(const Expr& e) { return only_mentions_n(e) && !e.mentions(Var::n); }

void check_constant_evaluates(const Expr& e, const std::string& what) {
    if (!is_constant(e)) throw std::invalid_argument(what + " must be constant: " + to_string(e));
    try {
        (void)eval_expr(e, {}, Precision(20));
    } catch (const std::domain_error& err) {
        throw std::invalid_argument(what + " cannot be evaluated: " + err.what());
    }
}

}  // namespace

void validate(const RademacherFormula& f) {
    if (!only_mentions_n(f.prefactor)) {
        throw std::invalid_argument("prefactor may only depend on n");
    }
    if (f.cases.empty()) throw std::invalid_argument(f.name + ": formula has no cases");
    for (const auto& c : f.cases) {
        const std::string where = f.name + " case d=" + std::to_string(c.d);
        if (c.d < 1) throw std::invalid_argument(where + ": case key must be positive");
        check_constant_evaluates(c.weight, where + ": weight");
        check_constant_evaluates(c.kernel.argument_constant, where + ": argument constant");
        const LinearForm lf = linear_form(c.kernel.radicand);
        if (lf.alpha == 0) throw std::invalid_argument(where + ": radicand is constant");
        const Rational nu = c.kernel.order;
        if (nu < 1 || denominator(Rational(nu * 2)) != 1) {
            throw std::invalid_argument(where + ": Bessel order must be a half-integer >= 1");
        }
        if (c.kernel.kind == KernelKind::sinh_derivative && nu != make_rational(3, 2)) {
            throw std::invalid_argument(where + ": sinh kernel requires order 3/2");
        }
        for (const auto& t : c.omega.terms) {
            if (t.m < 1) throw std::invalid_argument(where + ": omega multiplier must be >= 1");
        }
    }
}

// ---------------------------------------------------------------------------
// LaTeX

namespace {

std::string latex_order(const Rational& nu) {
    std::string s = to_string(nu);
    return s.size() == 1 ? s : "{" + s + "}";
}

std::string latex_k_power(const Rational& p) {
    if (p == -1) return "\\frac{1}{k}";
    if (p == make_rational(1, 2)) return "\\sqrt{k}";
    if (p == make_rational(-1, 2)) return "\\frac{1}{\\sqrt{k}}";
    if (p == 0) return "";
    return "k^{" + to_string(p) + "}";
}

std::string latex_omega_factor(const OmegaTerm& t, const KRestriction& r) {
    std::string body;
    if (auto g = r.fixed_gcd(t.m)) {
        const std::int64_t a = t.m / *g;
        const std::string h = a == 1 ? "h" : std::to_string(a) + "h";
        const std::string k = *g == 1 ? "k" : "\\frac{k}{" + std::to_string(*g) + "}";
        body = "\\omega\\left(" + h + ", " + k + "\\right)";
    } else {
        const std::string gk = "(k," + std::to_string(t.m) + ")";
        body = "\\omega\\left(\\frac{" + std::to_string(t.m) + "h}{" + gk + "}, \\frac{k}{" +
               gk + "}\\right)";
    }
    const std::int64_t e = t.e < 0 ? -t.e : t.e;
    return e == 1 ? body : body + "^{" + std::to_string(e) + "}";
}

std::string latex_omega(const OmegaProductDescriptor& d, const KRestriction& r) {
    std::string num, den;
    for (const auto& t : d.terms) {
        if (t.e == 0) continue;
        std::string& side = t.e > 0 ? num : den;
        if (!side.empty()) side += " ";
        side += latex_omega_factor(t, r);
    }
    if (den.empty()) return num;
    return "\\frac{" + (num.empty() ? std::string("1") : num) + "}{" + den + "}";
}

std::string latex_kernel(const BesselKernel& k) {
    const std::string arg = "\\frac{" + to_latex(k.argument_constant) + " \\sqrt{" +
                            to_latex(k.radicand) + "}}{k}";
    if (k.kind == KernelKind::sinh_derivative) {
        return "\\frac{d}{dn}\\left(\\frac{\\sinh\\left(" + arg + "\\right)}{\\sqrt{" +
               to_latex(k.radicand) + "}}\\right)";
    }
    return "I_" + latex_order(k.order) + "\\left(" + arg + "\\right)";
}

std::string latex_name(const std::string& name) {
    std::string out;
    for (char ch : name) {
        if (ch == '_') out += "\\_";
        else out += ch;
    }
    return "\\mathrm{" + out + "}(n)";
}

}  // namespace

std::string to_latex(const RademacherFormula& f) {
    std::ostringstream os;
    if (f.weight_closed_form) {
        os << "% case weights: " << to_latex(*f.weight_closed_form) << "\n";
    }
    os << latex_name(f.name) << " = " << to_latex(f.prefactor);
    const bool bracket = f.cases.size() > 1;
    os << (bracket ? " \\left[ " : " ");
    for (std::size_t i = 0; i < f.cases.size(); ++i) {
        const auto& c = f.cases[i];
        if (i > 0) os << "\n + ";
        if (!(c.weight == Expr(1))) os << to_latex(c.weight) << " ";
        os << "\\sum_{" << c.restriction.to_latex() << "} " << latex_k_power(c.k_power)
           << " \\sum_{\\substack{0 \\leq h < k \\\\ (h,k)=1}} e^{-2\\pi i n h/k} "
           << latex_omega(c.omega, c.restriction) << " " << latex_kernel(c.kernel);
    }
    if (bracket) os << " \\right]";
    return os.str();
}

// ---------------------------------------------------------------------------
// JSON

namespace {

json rational_to_json(const Rational& r) {
    if (denominator(r) == 1 && abs(numerator(r)) < BigInt(1) << 53) {
        return numerator(r).convert_to<std::int64_t>();
    }
    return to_string(r);
}

const json& require(const json& j, const char* key, const std::string& path) {
    if (!j.is_object()) throw FormatError("expected an object at " + (path.empty() ? "/" : path));
    if (!j.contains(key)) {
        throw FormatError("missing field '" + std::string(key) + "' at " +
                          (path.empty() ? "/" : path));
    }
    return j.at(key);
}

std::int64_t int_field(const json& j, const char* key, const std::string& path) {
    const json& v = require(j, key, path);
    if (!v.is_number_integer()) {
        throw FormatError("expected an integer at " + path + "/" + key);
    }
    return v.get<std::int64_t>();
}

std::string string_field(const json& j, const char* key, const std::string& path) {
    const json& v = require(j, key, path);
    if (!v.is_string()) throw FormatError("expected a string at " + path + "/" + key);
    return v.get<std::string>();
}

Rational rational_from_json(const json& j, const std::string& path) {
    if (j.is_number_integer()) return make_rational(j.get<std::int64_t>());
    if (j.is_string()) {
        const std::string s = j.get<std::string>();
        const auto slash = s.find('/');
        try {
            if (slash == std::string::npos) return Rational(BigInt(s));
            BigInt num(s.substr(0, slash));
            BigInt den(s.substr(slash + 1));
            if (den != 0) return Rational(num, den);
        } catch (const std::exception&) {
        }
    }
    throw FormatError("expected a rational (integer or \"p/q\") at " + path);
}

json restriction_to_json(const KRestriction& r) {
    if (const auto* g = std::get_if<GcdRestriction>(&r.value())) {
        return {{"type", "gcd"}, {"modulus", g->modulus}, {"value", g->value}};
    }
    const auto& c = std::get<CongruenceRestriction>(r.value());
    return {{"type", "congruence"}, {"modulus", c.modulus}, {"residue", c.residue}};
}

KRestriction restriction_from_json(const json& j, const std::string& path) {
    const std::string type = string_field(j, "type", path);
    try {
        if (type == "gcd") {
            return KRestriction::gcd_equals(int_field(j, "modulus", path),
                                            int_field(j, "value", path));
        }
        if (type == "congruence") {
            return KRestriction::congruent(int_field(j, "residue", path),
                                           int_field(j, "modulus", path));
        }
    } catch (const std::invalid_argument& e) {
        throw FormatError(std::string(e.what()) + " at " + path);
    }
    throw FormatError("unknown restriction type '" + type + "' at " + path + "/type");
}

json case_to_json(const FormulaCase& c) {
    json omega_json;
    to_json(omega_json, c.omega);
    return {
        {"d", c.d},
        {"restriction", restriction_to_json(c.restriction)},
        {"weight", expr_to_json(c.weight)},
        {"omega", omega_json},
        {"kernel",
         {{"order", rational_to_json(c.kernel.order)},
          {"kind", kernel_kind_name(c.kernel.kind)},
          {"argument_constant", expr_to_json(c.kernel.argument_constant)},
          {"radicand", expr_to_json(c.kernel.radicand)}}},
        {"k_power", rational_to_json(c.k_power)},
    };
}

OmegaProductDescriptor omega_from_json(const json& j, const std::string& path) {
    OmegaProductDescriptor desc;
    const json& terms = require(j, "terms", path);
    if (!terms.is_array()) throw FormatError("expected an array at " + path + "/terms");
    for (std::size_t i = 0; i < terms.size(); ++i) {
        const std::string p = path + "/terms/" + std::to_string(i);
        desc.terms.push_back({int_field(terms[i], "m", p), int_field(terms[i], "e", p)});
    }
    return desc;
}

FormulaCase case_from_json(const json& j, const std::string& path) {
    FormulaCase c;
    c.d = int_field(j, "d", path);
    c.restriction = restriction_from_json(require(j, "restriction", path), path + "/restriction");
    c.weight = expr_from_json(require(j, "weight", path), path + "/weight");
    c.omega = omega_from_json(require(j, "omega", path), path + "/omega");
    const std::string kp = path + "/kernel";
    const json& k = require(j, "kernel", path);
    c.kernel.order = rational_from_json(require(k, "order", kp), kp + "/order");
    const std::string kind = string_field(k, "kind", kp);
    if (kind == "i_series") {
        c.kernel.kind = KernelKind::i_series;
    } else if (kind == "sinh_derivative") {
        c.kernel.kind = KernelKind::sinh_derivative;
    } else {
        throw FormatError("unknown kernel kind '" + kind + "' at " + kp + "/kind");
    }
    c.kernel.argument_constant =
        expr_from_json(require(k, "argument_constant", kp), kp + "/argument_constant");
    c.kernel.radicand = expr_from_json(require(k, "radicand", kp), kp + "/radicand");
    c.k_power = rational_from_json(require(j, "k_power", path), path + "/k_power");
    return c;
}

}  // namespace

json to_json(const RademacherFormula& f) {
    json cases = json::array();
    for (const auto& c : f.cases) cases.push_back(case_to_json(c));
    json spec;
    to_json(spec, f.oracle);
    json j = {
        {"name", f.name},
        {"prefactor", expr_to_json(f.prefactor)},
        {"cases", cases},
        {"oracle", {{"name", f.oracle_name}, {"spec", spec}}},
        {"status", status_name(f.status)},
        {"description", f.description},
    };
    if (f.weight_closed_form) j["weight_closed_form"] = expr_to_json(*f.weight_closed_form);
    return j;
}

RademacherFormula formula_from_json(const json& j) {
    RademacherFormula f;
    f.name = string_field(j, "name", "");
    f.prefactor = expr_from_json(require(j, "prefactor", ""), "/prefactor");
    const json& cases = require(j, "cases", "");
    if (!cases.is_array()) throw FormatError("expected an array at /cases");
    for (std::size_t i = 0; i < cases.size(); ++i) {
        f.cases.push_back(case_from_json(cases[i], "/cases/" + std::to_string(i)));
    }
    const json& oracle = require(j, "oracle", "");
    if (oracle.contains("name")) f.oracle_name = string_field(oracle, "name", "/oracle");
    try {
        from_json(require(oracle, "spec", "/oracle"), f.oracle);
    } catch (const json::exception& e) {
        throw FormatError(std::string("bad eta quotient at /oracle/spec: ") + e.what());
    } catch (const std::invalid_argument& e) {
        throw FormatError(std::string("bad eta quotient at /oracle/spec: ") + e.what());
    }
    if (j.contains("status")) {
        const std::string s = string_field(j, "status", "");
        if (s == "builtin") f.status = FormulaStatus::builtin;
        else if (s == "CONJECTURED") f.status = FormulaStatus::conjectured;
        else if (s == "verified") f.status = FormulaStatus::verified;
        else throw FormatError("unknown status '" + s + "' at /status");
    }
    if (j.contains("description")) f.description = string_field(j, "description", "");
    if (j.contains("weight_closed_form")) {
        f.weight_closed_form = expr_from_json(j.at("weight_closed_form"), "/weight_closed_form");
    }
    return f;
}

RademacherFormula formula_from_string(std::string_view text) {
    json j;
    try {
        j = json::parse(text.begin(), text.end());
    } catch (const json::parse_error& e) {
        throw FormatError("JSON syntax error at byte " + std::to_string(e.byte) + ": " + e.what());
    }
    return formula_from_json(j);
}

}  // namespace circle
