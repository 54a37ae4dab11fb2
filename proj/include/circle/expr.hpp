#pragma once

// Small closed expression language for the constant skeletons of
// Rademacher-type formulas: literals, pi, the variables n, k, d, the four
// arithmetic operations, integer powers and square roots.

#include <cstdint>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "circle/real.hpp"
#include "circle/types.hpp"

namespace circle {

enum class Var { n, k, d };

const char* var_name(Var v);

/// Malformed serialized input; the message carries the location.
class FormatError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class Expr {
public:
    enum class Kind { integer, rational, pi, variable, neg, add, sub, mul, div, pow, sqrt };

    Expr();  // the integer 0
    Expr(std::int64_t v);  // NOLINT: implicit integer literals read naturally in formulas

    static Expr integer(const BigInt& v);
    static Expr rational(const Rational& v);
    static Expr pi();
    static Expr var(Var v);

    friend Expr operator-(const Expr& a);
    friend Expr operator+(const Expr& a, const Expr& b);
    friend Expr operator-(const Expr& a, const Expr& b);
    friend Expr operator*(const Expr& a, const Expr& b);
    friend Expr operator/(const Expr& a, const Expr& b);
    friend Expr pow(const Expr& base, std::int64_t exponent);
    friend Expr sqrt(const Expr& a);

    Kind kind() const;
    /// Value of an integer or rational literal.
    const Rational& literal() const;
    Var variable() const;
    std::int64_t exponent() const;
    const std::vector<Expr>& args() const;

    bool is_literal() const { return kind() == Kind::integer || kind() == Kind::rational; }
    bool mentions(Var v) const;

    friend bool operator==(const Expr& a, const Expr& b);

private:
    struct Node;
    explicit Expr(std::shared_ptr<const Node> node);
    std::shared_ptr<const Node> node_;
};

struct Bindings {
    std::optional<Rational> n;
    std::optional<Rational> k;
    std::optional<Rational> d;

    Bindings& set(Var v, const Rational& value);
    const std::optional<Rational>& get(Var v) const;
};

/// Exact value, or nullopt when the tree involves pi or an irrational root.
std::optional<Rational> eval_exact(const Expr& e, const Bindings& b);

/// Value at the current MPFR default precision. Maximal rational subtrees
/// are evaluated exactly and rounded once.
Real eval_expr(const Expr& e, const Bindings& b);

/// Same, at the given precision.
Real eval_expr(const Expr& e, const Bindings& b, Precision p);

/// coeff * pi^pi_power * sqrt(radicand) with radicand a squarefree positive integer.
struct Surd {
    Rational coeff = 0;
    int pi_power = 0;
    BigInt radicand = 1;

    static Surd from_rational(const Rational& r);
    static Surd sqrt_of(const Rational& r);
    static Surd pi(int power = 1);

    Surd operator*(const Surd& o) const;
    Surd operator/(const Surd& o) const;
    Surd pow(std::int64_t e) const;
    std::optional<Surd> sqrt() const;

    /// Square with pi stripped: coeff^2 * radicand.
    Rational squared_rational_part() const { return coeff * coeff * Rational(radicand); }
    Expr to_expr() const;

    friend bool operator==(const Surd&, const Surd&) = default;
};

/// Exact surd value of a constant tree, or nullopt if it is not of that shape.
std::optional<Surd> to_surd(const Expr& e, const Bindings& b = {});

std::string to_string(const Expr& e);
std::string to_latex(const Expr& e);

nlohmann::json expr_to_json(const Expr& e);
Expr expr_from_json(const nlohmann::json& j, const std::string& path = "");

}  // namespace circle
