#include "circle/expr.hpp"

#include <cctype>
#include <limits>
#include <variant>

#include <nlohmann/json.hpp>

namespace circle {

struct Expr::Node {
    Kind kind = Kind::integer;
    Rational value = 0;
    Var var = Var::n;
    std::int64_t exponent = 0;
    std::vector<Expr> args;
};

namespace {

bool is_perfect_square(const BigInt& v) {
    return v >= 0 && mpz_perfect_square_p(v.backend().data()) != 0;
}

BigInt isqrt(const BigInt& v) {
    BigInt r;
    mpz_sqrt(r.backend().data(), v.backend().data());
    return r;
}

std::optional<Rational> exact_sqrt(const Rational& r) {
    if (r < 0) {
        throw std::domain_error("square root of negative value " + to_string(r));
    }
    if (is_perfect_square(numerator(r)) && is_perfect_square(denominator(r))) {
        return Rational(isqrt(numerator(r)), isqrt(denominator(r)));
    }
    return std::nullopt;
}

Rational exact_pow(const Rational& base, std::int64_t e) {
    if (e < 0) {
        if (base == 0) throw std::domain_error("zero raised to a negative power");
        return exact_pow(1 / base, -e);
    }
    Rational acc = 1;
    for (std::int64_t i = 0; i < e; ++i) acc *= base;
    return acc;
}

// Squarefree factorization v = s^2 * t by trial division.
std::pair<BigInt, BigInt> split_square(BigInt v) {
    BigInt s = 1, t = 1;
    for (BigInt p = 2; p * p <= v; ++p) {
        while (v % (p * p) == 0) {
            v /= p * p;
            s *= p;
        }
        if (v % p == 0) {
            v /= p;
            t *= p;
        }
    }
    t *= v;
    return {s, t};
}

const Rational& bound(const Bindings& b, Var v) {
    const auto& value = b.get(v);
    if (!value) {
        throw std::invalid_argument(std::string("unbound variable ") + var_name(v));
    }
    return *value;
}

}  // namespace

const char* var_name(Var v) {
    switch (v) {
        case Var::n: return "n";
        case Var::k: return "k";
        case Var::d: return "d";
    }
    return "?";
}

Expr::Expr() : Expr(std::int64_t{0}) {}

Expr::Expr(std::int64_t v) {
    auto node = std::make_shared<Node>();
    node->kind = Kind::integer;
    node->value = v;
    node_ = std::move(node);
}

Expr::Expr(std::shared_ptr<const Node> node) : node_(std::move(node)) {}

Expr Expr::integer(const BigInt& v) {
    auto node = std::make_shared<Node>();
    node->kind = Kind::integer;
    node->value = Rational(v);
    return Expr(std::move(node));
}

Expr Expr::rational(const Rational& v) {
    if (denominator(v) == 1) return integer(numerator(v));
    auto node = std::make_shared<Node>();
    node->kind = Kind::rational;
    node->value = v;
    return Expr(std::move(node));
}

Expr Expr::pi() {
    auto node = std::make_shared<Node>();
    node->kind = Kind::pi;
    return Expr(std::move(node));
}

Expr Expr::var(Var v) {
    auto node = std::make_shared<Node>();
    node->kind = Kind::variable;
    node->var = v;
    return Expr(std::move(node));
}

Expr operator-(const Expr& a) {
    auto node = std::make_shared<Expr::Node>();
    node->kind = Expr::Kind::neg;
    node->args = {a};
    return Expr(std::move(node));
}

#define CIRCLE_BINARY_OP(op, kind_name)                      \
    Expr operator op(const Expr& a, const Expr& b) {         \
        auto node = std::make_shared<Expr::Node>();          \
        node->kind = Expr::Kind::kind_name;                  \
        node->args = {a, b};                                 \
        return Expr(std::move(node));                        \
    }

CIRCLE_BINARY_OP(+, add)
CIRCLE_BINARY_OP(-, sub)
CIRCLE_BINARY_OP(*, mul)
CIRCLE_BINARY_OP(/, div)
#undef CIRCLE_BINARY_OP

Expr pow(const Expr& base, std::int64_t exponent) {
    auto node = std::make_shared<Expr::Node>();
    node->kind = Expr::Kind::pow;
    node->args = {base};
    node->exponent = exponent;
    return Expr(std::move(node));
}

Expr sqrt(const Expr& a) {
    auto node = std::make_shared<Expr::Node>();
    node->kind = Expr::Kind::sqrt;
    node->args = {a};
    return Expr(std::move(node));
}

Expr::Kind Expr::kind() const { return node_->kind; }

const Rational& Expr::literal() const {
    if (!is_literal()) throw std::logic_error("Expr::literal on a non-literal node");
    return node_->value;
}

Var Expr::variable() const {
    if (kind() != Kind::variable) throw std::logic_error("Expr::variable on a non-variable");
    return node_->var;
}

std::int64_t Expr::exponent() const { return node_->exponent; }

const std::vector<Expr>& Expr::args() const { return node_->args; }

bool Expr::mentions(Var v) const {
    if (kind() == Kind::variable) return node_->var == v;
    for (const auto& a : args()) {
        if (a.mentions(v)) return true;
    }
    return false;
}

bool operator==(const Expr& a, const Expr& b) {
    if (a.node_ == b.node_) return true;
    const auto& x = *a.node_;
    const auto& y = *b.node_;
    return x.kind == y.kind && x.value == y.value && x.var == y.var &&
           x.exponent == y.exponent && x.args == y.args;
}

Bindings& Bindings::set(Var v, const Rational& value) {
    switch (v) {
        case Var::n: n = value; break;
        case Var::k: k = value; break;
        case Var::d: d = value; break;
    }
    return *this;
}

const std::optional<Rational>& Bindings::get(Var v) const {
    switch (v) {
        case Var::n: return n;
        case Var::k: return k;
        case Var::d: return d;
    }
    return n;
}

std::optional<Rational> eval_exact(const Expr& e, const Bindings& b) {
    using K = Expr::Kind;
    switch (e.kind()) {
        case K::integer:
        case K::rational: return e.literal();
        case K::pi: return std::nullopt;
        case K::variable: return bound(b, e.variable());
        case K::neg: {
            auto a = eval_exact(e.args()[0], b);
            if (!a) return std::nullopt;
            return -*a;
        }
        case K::add:
        case K::sub:
        case K::mul:
        case K::div: {
            auto x = eval_exact(e.args()[0], b);
            auto y = eval_exact(e.args()[1], b);
            if (!x || !y) return std::nullopt;
            if (e.kind() == K::add) return *x + *y;
            if (e.kind() == K::sub) return *x - *y;
            if (e.kind() == K::mul) return *x * *y;
            if (*y == 0) throw std::domain_error("division by zero");
            return *x / *y;
        }
        case K::pow: {
            auto x = eval_exact(e.args()[0], b);
            if (!x) return std::nullopt;
            return exact_pow(*x, e.exponent());
        }
        case K::sqrt: {
            auto x = eval_exact(e.args()[0], b);
            if (!x) return std::nullopt;
            return exact_sqrt(*x);
        }
    }
    return std::nullopt;
}

namespace {

using Value = std::variant<Rational, Real>;

Real as_real(const Value& v) {
    if (const auto* r = std::get_if<Rational>(&v)) return to_real(*r);
    return std::get<Real>(v);
}

Value eval_value(const Expr& e, const Bindings& b) {
    using K = Expr::Kind;
    switch (e.kind()) {
        case K::integer:
        case K::rational: return e.literal();
        case K::pi: return real_pi();
        case K::variable: return bound(b, e.variable());
        case K::neg: {
            Value a = eval_value(e.args()[0], b);
            if (auto* r = std::get_if<Rational>(&a)) return Value(Rational(-*r));
            return Value(Real(-std::get<Real>(a)));
        }
        case K::add:
        case K::sub:
        case K::mul:
        case K::div: {
            Value x = eval_value(e.args()[0], b);
            Value y = eval_value(e.args()[1], b);
            auto* rx = std::get_if<Rational>(&x);
            auto* ry = std::get_if<Rational>(&y);
            if (rx && ry) {
                if (e.kind() == K::add) return Value(Rational(*rx + *ry));
                if (e.kind() == K::sub) return Value(Rational(*rx - *ry));
                if (e.kind() == K::mul) return Value(Rational(*rx * *ry));
                if (*ry == 0) throw std::domain_error("division by zero");
                return Value(Rational(*rx / *ry));
            }
            Real fx = as_real(x), fy = as_real(y);
            if (e.kind() == K::add) return Value(Real(fx + fy));
            if (e.kind() == K::sub) return Value(Real(fx - fy));
            if (e.kind() == K::mul) return Value(Real(fx * fy));
            if (fy == 0) throw std::domain_error("division by zero");
            return Value(Real(fx / fy));
        }
        case K::pow: {
            Value x = eval_value(e.args()[0], b);
            if (auto* r = std::get_if<Rational>(&x)) return Value(exact_pow(*r, e.exponent()));
            Real base = std::get<Real>(x);
            Real out;
            mpfr_pow_si(out.backend().data(), base.backend().data(), e.exponent(), MPFR_RNDN);
            return Value(out);
        }
        case K::sqrt: {
            Value x = eval_value(e.args()[0], b);
            if (auto* r = std::get_if<Rational>(&x)) {
                if (auto s = exact_sqrt(*r)) return Value(*s);
                return Value(Real(boost::multiprecision::sqrt(to_real(*r))));
            }
            Real v = std::get<Real>(x);
            if (v < 0) throw std::domain_error("square root of negative value");
            return Value(Real(boost::multiprecision::sqrt(v)));
        }
    }
    throw std::logic_error("eval_value: unknown node kind");
}

}  // namespace

Real eval_expr(const Expr& e, const Bindings& b) { return as_real(eval_value(e, b)); }

Real eval_expr(const Expr& e, const Bindings& b, Precision p) {
    PrecisionScope scope(p);
    return eval_expr(e, b);
}

// ---------------------------------------------------------------------------
// Surd

Surd Surd::from_rational(const Rational& r) { return Surd{r, 0, 1}; }

Surd Surd::sqrt_of(const Rational& r) {
    if (r < 0) throw std::domain_error("sqrt of negative rational");
    if (r == 0) return {};
    // sqrt(a/b) = sqrt(a b) / b
    auto [s, t] = split_square(numerator(r) * denominator(r));
    return Surd{Rational(s, denominator(r)), 0, t};
}

Surd Surd::pi(int power) { return Surd{1, power, 1}; }

Surd Surd::operator*(const Surd& o) const {
    if (coeff == 0 || o.coeff == 0) return {};
    auto [s, t] = split_square(radicand * o.radicand);
    return Surd{coeff * o.coeff * Rational(s), pi_power + o.pi_power, t};
}

Surd Surd::operator/(const Surd& o) const {
    if (o.coeff == 0) throw std::domain_error("surd division by zero");
    // 1/(c sqrt(r)) = sqrt(r) / (c r)
    Surd inv{1 / (o.coeff * Rational(o.radicand)), -o.pi_power, o.radicand};
    return *this * inv;
}

Surd Surd::pow(std::int64_t e) const {
    if (e < 0) return Surd::from_rational(1) / pow(-e);
    Surd acc = Surd::from_rational(1);
    for (std::int64_t i = 0; i < e; ++i) acc = acc * *this;
    return acc;
}

std::optional<Surd> Surd::sqrt() const {
    if (coeff < 0 || radicand != 1 || pi_power % 2 != 0) return std::nullopt;
    Surd out = sqrt_of(coeff);
    out.pi_power = coeff == 0 ? 0 : pi_power / 2;
    return out;
}

Expr Surd::to_expr() const {
    if (coeff == 0) return Expr(0);
    const BigInt a = numerator(coeff);
    const BigInt b = denominator(coeff);
    Expr num = Expr::integer(BigInt(abs(a)));
    bool num_is_one = abs(a) == 1;
    auto times = [&](const Expr& f) {
        num = num_is_one ? f : num * f;
        num_is_one = false;
    };
    if (pi_power > 0) times(pi_power == 1 ? Expr::pi() : circle::pow(Expr::pi(), pi_power));
    if (radicand != 1) times(circle::sqrt(Expr::integer(radicand)));
    Expr out = num;
    Expr den = Expr::integer(b);
    bool den_is_one = b == 1;
    if (pi_power < 0) {
        Expr p = pi_power == -1 ? Expr::pi() : circle::pow(Expr::pi(), -pi_power);
        den = den_is_one ? p : den * p;
        den_is_one = false;
    }
    if (!den_is_one) out = out / den;
    return a < 0 ? -out : out;
}

std::optional<Surd> to_surd(const Expr& e, const Bindings& b) {
    using K = Expr::Kind;
    switch (e.kind()) {
        case K::integer:
        case K::rational: return Surd::from_rational(e.literal());
        case K::pi: return Surd::pi();
        case K::variable: return Surd::from_rational(bound(b, e.variable()));
        case K::neg: {
            auto a = to_surd(e.args()[0], b);
            if (!a) return std::nullopt;
            a->coeff = -a->coeff;
            return a;
        }
        case K::add:
        case K::sub: {
            auto x = to_surd(e.args()[0], b);
            auto y = to_surd(e.args()[1], b);
            if (!x || !y) return std::nullopt;
            if (e.kind() == K::sub) y->coeff = -y->coeff;
            if (x->coeff == 0) return y;
            if (y->coeff == 0) return x;
            if (x->pi_power != y->pi_power || x->radicand != y->radicand) return std::nullopt;
            Surd s{x->coeff + y->coeff, x->pi_power, x->radicand};
            if (s.coeff == 0) return Surd{};
            return s;
        }
        case K::mul:
        case K::div: {
            auto x = to_surd(e.args()[0], b);
            auto y = to_surd(e.args()[1], b);
            if (!x || !y) return std::nullopt;
            return e.kind() == K::mul ? *x * *y : *x / *y;
        }
        case K::pow: {
            auto x = to_surd(e.args()[0], b);
            if (!x) return std::nullopt;
            return x->pow(e.exponent());
        }
        case K::sqrt: {
            auto x = to_surd(e.args()[0], b);
            if (!x) return std::nullopt;
            if (x->coeff < 0) throw std::domain_error("square root of negative value");
            return x->sqrt();
        }
    }
    return std::nullopt;
}

// ---------------------------------------------------------------------------
// Printing

namespace {

int precedence(const Expr& e) {
    using K = Expr::Kind;
    switch (e.kind()) {
        case K::add:
        case K::sub: return 1;
        case K::neg:
        case K::mul:
        case K::div: return 2;
        case K::pow: return 3;
        case K::integer: return e.literal() < 0 ? 2 : 4;
        case K::rational: return 2;
        default: return 4;
    }
}

std::string plain(const Expr& e, int min_prec);

std::string plain_wrapped(const Expr& e, int min_prec) {
    std::string s = plain(e, 0);
    return precedence(e) < min_prec ? "(" + s + ")" : s;
}

std::string plain(const Expr& e, int /*min_prec*/) {
    using K = Expr::Kind;
    const auto& a = e.args();
    switch (e.kind()) {
        case K::integer: return numerator(e.literal()).str();
        case K::rational: return to_string(e.literal());
        case K::pi: return "pi";
        case K::variable: return var_name(e.variable());
        case K::neg: return "-" + plain_wrapped(a[0], 3);
        case K::add: return plain_wrapped(a[0], 1) + " + " + plain_wrapped(a[1], 1);
        case K::sub: return plain_wrapped(a[0], 1) + " - " + plain_wrapped(a[1], 2);
        case K::mul: return plain_wrapped(a[0], 2) + "*" + plain_wrapped(a[1], 2);
        case K::div: return plain_wrapped(a[0], 2) + "/" + plain_wrapped(a[1], 3);
        case K::pow: return plain_wrapped(a[0], 4) + "^" + std::to_string(e.exponent());
        case K::sqrt: return "sqrt(" + plain(a[0], 0) + ")";
    }
    return "?";
}

std::string latex(const Expr& e);

std::string latex_wrapped(const Expr& e, int min_prec) {
    std::string s = latex(e);
    return precedence(e) < min_prec ? "\\left(" + s + "\\right)" : s;
}

bool starts_with_digit(const std::string& s) {
    return !s.empty() && (std::isdigit(static_cast<unsigned char>(s[0])) || s[0] == '-');
}

std::string latex(const Expr& e) {
    using K = Expr::Kind;
    const auto& a = e.args();
    switch (e.kind()) {
        case K::integer: return numerator(e.literal()).str();
        case K::rational: {
            const Rational& v = e.literal();
            std::string frac = "\\frac{" + BigInt(abs(numerator(v))).str() + "}{" +
                               denominator(v).str() + "}";
            return v < 0 ? "-" + frac : frac;
        }
        case K::pi: return "\\pi";
        case K::variable: return var_name(e.variable());
        case K::neg: return "-" + latex_wrapped(a[0], 3);
        case K::add: return latex_wrapped(a[0], 1) + " + " + latex_wrapped(a[1], 1);
        case K::sub: return latex_wrapped(a[0], 1) + " - " + latex_wrapped(a[1], 2);
        case K::mul: {
            std::string lhs = latex_wrapped(a[0], 2);
            std::string rhs = latex_wrapped(a[1], 2);
            return lhs + (starts_with_digit(rhs) ? " \\cdot " : " ") + rhs;
        }
        case K::div: return "\\frac{" + latex(a[0]) + "}{" + latex(a[1]) + "}";
        case K::pow: return "{" + latex_wrapped(a[0], 4) + "}^{" + std::to_string(e.exponent()) + "}";
        case K::sqrt: return "\\sqrt{" + latex(a[0]) + "}";
    }
    return "?";
}

const char* kind_tag(Expr::Kind k) {
    using K = Expr::Kind;
    switch (k) {
        case K::integer: return "int";
        case K::rational: return "rat";
        case K::pi: return "pi";
        case K::variable: return "var";
        case K::neg: return "neg";
        case K::add: return "add";
        case K::sub: return "sub";
        case K::mul: return "mul";
        case K::div: return "div";
        case K::pow: return "pow";
        case K::sqrt: return "sqrt";
    }
    return "?";
}

nlohmann::json bigint_to_json(const BigInt& v) {
    if (v >= std::numeric_limits<std::int64_t>::min() &&
        v <= std::numeric_limits<std::int64_t>::max()) {
        return v.convert_to<std::int64_t>();
    }
    return v.str();
}

BigInt bigint_from_json(const nlohmann::json& j, const std::string& path) {
    if (j.is_number_integer()) return BigInt(j.get<std::int64_t>());
    if (j.is_string()) {
        try {
            return BigInt(j.get<std::string>());
        } catch (const std::exception&) {
        }
    }
    throw FormatError("expected an integer at " + path);
}

const nlohmann::json& field(const nlohmann::json& j, const char* key, const std::string& path) {
    if (!j.is_object() || !j.contains(key)) {
        throw FormatError("missing field '" + std::string(key) + "' at " + path);
    }
    return j.at(key);
}

}  // namespace

std::string to_string(const Expr& e) { return plain(e, 0); }

std::string to_latex(const Expr& e) { return latex(e); }

nlohmann::json expr_to_json(const Expr& e) {
    using K = Expr::Kind;
    nlohmann::json j = {{"op", kind_tag(e.kind())}};
    switch (e.kind()) {
        case K::integer: j["value"] = bigint_to_json(numerator(e.literal())); break;
        case K::rational:
            j["num"] = bigint_to_json(numerator(e.literal()));
            j["den"] = bigint_to_json(denominator(e.literal()));
            break;
        case K::pi: break;
        case K::variable: j["name"] = var_name(e.variable()); break;
        case K::neg:
        case K::sqrt: j["arg"] = expr_to_json(e.args()[0]); break;
        case K::pow:
            j["base"] = expr_to_json(e.args()[0]);
            j["exp"] = e.exponent();
            break;
        default:
            j["lhs"] = expr_to_json(e.args()[0]);
            j["rhs"] = expr_to_json(e.args()[1]);
            break;
    }
    return j;
}

Expr expr_from_json(const nlohmann::json& j, const std::string& path) {
    const std::string where = path.empty() ? "/" : path;
    const auto& op_json = field(j, "op", where);
    if (!op_json.is_string()) throw FormatError("'op' must be a string at " + where);
    const std::string op = op_json.get<std::string>();
    if (op == "int") return Expr::integer(bigint_from_json(field(j, "value", where), path + "/value"));
    if (op == "rat") {
        BigInt num = bigint_from_json(field(j, "num", where), path + "/num");
        BigInt den = bigint_from_json(field(j, "den", where), path + "/den");
        if (den == 0) throw FormatError("zero denominator at " + where);
        return Expr::rational(Rational(num, den));
    }
    if (op == "pi") return Expr::pi();
    if (op == "var") {
        const auto& name = field(j, "name", where);
        if (name == "n") return Expr::var(Var::n);
        if (name == "k") return Expr::var(Var::k);
        if (name == "d") return Expr::var(Var::d);
        throw FormatError("unknown variable at " + path + "/name");
    }
    if (op == "neg") return -expr_from_json(field(j, "arg", where), path + "/arg");
    if (op == "sqrt") return sqrt(expr_from_json(field(j, "arg", where), path + "/arg"));
    if (op == "pow") {
        const auto& ex = field(j, "exp", where);
        if (!ex.is_number_integer()) throw FormatError("'exp' must be an integer at " + where);
        return pow(expr_from_json(field(j, "base", where), path + "/base"), ex.get<std::int64_t>());
    }
    if (op == "add" || op == "sub" || op == "mul" || op == "div") {
        Expr lhs = expr_from_json(field(j, "lhs", where), path + "/lhs");
        Expr rhs = expr_from_json(field(j, "rhs", where), path + "/rhs");
        if (op == "add") return lhs + rhs;
        if (op == "sub") return lhs - rhs;
        if (op == "mul") return lhs * rhs;
        return lhs / rhs;
    }
    throw FormatError("unknown op '" + op + "' at " + where);
}

}  // namespace circle
