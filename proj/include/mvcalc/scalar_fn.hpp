#pragma once

#include "dual.hpp"
#include "error.hpp"
#include "format.hpp"

#include <cmath>
#include <memory>
#include <string>
#include <utility>
#include <vector>

namespace mvcalc {

/// Unary scalar primitives. The set is closed under differentiation:
/// sin and cos map to each other, exp to itself, ln to power(-1), power and
/// polynomials to power and polynomials. sign is a step (derivative 0 off
/// zero) kept for discontinuity tests.
enum class Primitive { sin, cos, exp, ln, power, poly, sign };

class ScalarFn;

struct ScalarNode {
    enum class Kind { constant, variable, apply, add, sub, mul, div, neg };

    Kind kind = Kind::constant;
    double value = 0.0;           // constant
    Primitive prim = Primitive::sin;  // apply
    int exponent = 0;             // apply power
    std::vector<double> coeffs;   // apply poly, ascending powers
    std::shared_ptr<const ScalarNode> lhs, rhs;
};

/// Real function of one real variable t, as an immutable expression tree.
/// Subtrees are shared, never mutated.
class ScalarFn {
public:
    using Kind = ScalarNode::Kind;

    ScalarFn() : ScalarFn(constant(0.0)) {}

    static ScalarFn constant(double c) {
        ScalarNode n;
        n.kind = Kind::constant;
        n.value = c;
        return ScalarFn(std::move(n));
    }
    static ScalarFn variable() {
        ScalarNode n;
        n.kind = Kind::variable;
        return ScalarFn(std::move(n));
    }
    static ScalarFn apply(Primitive p, ScalarFn arg) {
        ScalarNode n;
        n.kind = Kind::apply;
        n.prim = p;
        n.lhs = std::move(arg.node_);
        return ScalarFn(std::move(n));
    }
    static ScalarFn power(ScalarFn arg, int exponent) {
        ScalarNode n;
        n.kind = Kind::apply;
        n.prim = Primitive::power;
        n.exponent = exponent;
        n.lhs = std::move(arg.node_);
        return ScalarFn(std::move(n));
    }
    static ScalarFn poly(ScalarFn arg, std::vector<double> coeffs) {
        ScalarNode n;
        n.kind = Kind::apply;
        n.prim = Primitive::poly;
        n.coeffs = std::move(coeffs);
        n.lhs = std::move(arg.node_);
        return ScalarFn(std::move(n));
    }
    static ScalarFn binary(Kind k, ScalarFn a, ScalarFn b) {
        ScalarNode n;
        n.kind = k;
        n.lhs = std::move(a.node_);
        n.rhs = std::move(b.node_);
        return ScalarFn(std::move(n));
    }
    static ScalarFn negate(ScalarFn a) {
        ScalarNode n;
        n.kind = Kind::neg;
        n.lhs = std::move(a.node_);
        return ScalarFn(std::move(n));
    }

    const ScalarNode& node() const { return *node_; }
    Kind kind() const { return node_->kind; }
    ScalarFn lhs() const { return ScalarFn(node_->lhs); }
    ScalarFn rhs() const { return ScalarFn(node_->rhs); }

    bool is_constant(double c) const { return node_->kind == Kind::constant && node_->value == c; }

private:
    explicit ScalarFn(ScalarNode n) : node_(std::make_shared<const ScalarNode>(std::move(n))) {}
    explicit ScalarFn(std::shared_ptr<const ScalarNode> n) : node_(std::move(n)) {}

    std::shared_ptr<const ScalarNode> node_;
};

inline ScalarFn operator+(ScalarFn a, ScalarFn b) { return ScalarFn::binary(ScalarFn::Kind::add, std::move(a), std::move(b)); }
inline ScalarFn operator-(ScalarFn a, ScalarFn b) { return ScalarFn::binary(ScalarFn::Kind::sub, std::move(a), std::move(b)); }
inline ScalarFn operator*(ScalarFn a, ScalarFn b) { return ScalarFn::binary(ScalarFn::Kind::mul, std::move(a), std::move(b)); }
inline ScalarFn operator/(ScalarFn a, ScalarFn b) { return ScalarFn::binary(ScalarFn::Kind::div, std::move(a), std::move(b)); }
inline ScalarFn operator-(ScalarFn a) { return ScalarFn::negate(std::move(a)); }

inline ScalarFn sin(ScalarFn a) { return ScalarFn::apply(Primitive::sin, std::move(a)); }
inline ScalarFn cos(ScalarFn a) { return ScalarFn::apply(Primitive::cos, std::move(a)); }
inline ScalarFn exp(ScalarFn a) { return ScalarFn::apply(Primitive::exp, std::move(a)); }
inline ScalarFn ln(ScalarFn a) { return ScalarFn::apply(Primitive::ln, std::move(a)); }
inline ScalarFn sign(ScalarFn a) { return ScalarFn::apply(Primitive::sign, std::move(a)); }

inline const char* primitive_name(Primitive p) {
    switch (p) {
    case Primitive::sin: return "sin";
    case Primitive::cos: return "cos";
    case Primitive::exp: return "exp";
    case Primitive::ln: return "ln";
    case Primitive::power: return "pow";
    case Primitive::poly: return "poly";
    case Primitive::sign: return "sign";
    }
    return "?";
}

/// Fully parenthesized text in the expression language.
inline std::string to_string(const ScalarFn& f) {
    using K = ScalarFn::Kind;
    const auto& n = f.node();
    switch (n.kind) {
    case K::constant: return n.value < 0 || std::signbit(n.value) ? "(-" + format_number(-n.value) + ")" : format_number(n.value);
    case K::variable: return "t";
    case K::apply: {
        std::string out = std::string(primitive_name(n.prim)) + "(" + to_string(f.lhs());
        if (n.prim == Primitive::power) out += ", " + std::to_string(n.exponent);
        if (n.prim == Primitive::poly)
            for (double c : n.coeffs) out += ", " + (std::signbit(c) ? "-" + format_number(-c) : format_number(c));
        return out + ")";
    }
    case K::add: return "(" + to_string(f.lhs()) + " + " + to_string(f.rhs()) + ")";
    case K::sub: return "(" + to_string(f.lhs()) + " - " + to_string(f.rhs()) + ")";
    case K::mul: return "(" + to_string(f.lhs()) + " * " + to_string(f.rhs()) + ")";
    case K::div: return "(" + to_string(f.lhs()) + " / " + to_string(f.rhs()) + ")";
    case K::neg: return "(-" + to_string(f.lhs()) + ")";
    }
    return {};
}

namespace detail {

inline double sign_of(double v) { return v > 0 ? 1.0 : (v < 0 ? -1.0 : 0.0); }
inline Dual sign_of(const Dual& v) { return {sign_of(v.value), 0.0}; }

template <typename T>
T eval_poly(const std::vector<double>& c, const T& x) {
    T acc(0.0);
    for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * x + T(*it);
    return acc;
}

template <typename T>
T eval_primitive(const ScalarFn& f, const T& x) {
    using std::cos;
    using std::exp;
    using std::log;
    using std::pow;
    using std::sin;
    const auto& n = f.node();
    switch (n.prim) {
    case Primitive::sin: return sin(x);
    case Primitive::cos: return cos(x);
    case Primitive::exp: return exp(x);
    case Primitive::ln:
        if (!(primal(x) > 0.0))
            throw DomainError("ln of non-positive value " + format_number(primal(x)) + " in " + to_string(f));
        return log(x);
    case Primitive::power:
        if (n.exponent < 0 && primal(x) == 0.0) throw DomainError("negative power of zero in " + to_string(f));
        if constexpr (std::is_same_v<T, double>)
            return n.exponent == 0 ? 1.0 : std::pow(x, n.exponent);
        else
            return pow(x, n.exponent);
    case Primitive::poly: return eval_poly(n.coeffs, x);
    case Primitive::sign: return sign_of(x);
    }
    return T(0.0);
}

} // namespace detail

/// Evaluates f at t. T is double or Dual.
template <typename T>
T evaluate(const ScalarFn& f, const T& t) {
    using K = ScalarFn::Kind;
    const auto& n = f.node();
    switch (n.kind) {
    case K::constant: return T(n.value);
    case K::variable: return t;
    case K::apply: return detail::eval_primitive(f, evaluate(f.lhs(), t));
    case K::add: return evaluate(f.lhs(), t) + evaluate(f.rhs(), t);
    case K::sub: return evaluate(f.lhs(), t) - evaluate(f.rhs(), t);
    case K::mul: return evaluate(f.lhs(), t) * evaluate(f.rhs(), t);
    case K::div: {
        T num = evaluate(f.lhs(), t);
        T den = evaluate(f.rhs(), t);
        if (primal(den) == 0.0) throw DomainError("division by zero in " + to_string(f));
        return num / den;
    }
    case K::neg: return -evaluate(f.lhs(), t);
    }
    return T(0.0);
}

namespace detail {
// Constructors that fold the zeros and ones the differentiation rules produce.
inline ScalarFn sum(ScalarFn a, ScalarFn b) {
    if (a.is_constant(0.0)) return b;
    if (b.is_constant(0.0)) return a;
    return a + b;
}
inline ScalarFn difference(ScalarFn a, ScalarFn b) {
    if (b.is_constant(0.0)) return a;
    if (a.is_constant(0.0)) return -b;
    return a - b;
}
inline ScalarFn product(ScalarFn a, ScalarFn b) {
    if (a.is_constant(0.0) || b.is_constant(0.0)) return ScalarFn::constant(0.0);
    if (a.is_constant(1.0)) return b;
    if (b.is_constant(1.0)) return a;
    return a * b;
}
} // namespace detail

/// d/dt of f, by the exact rule of each node.
inline ScalarFn differentiate(const ScalarFn& f) {
    using K = ScalarFn::Kind;
    const auto& n = f.node();
    switch (n.kind) {
    case K::constant: return ScalarFn::constant(0.0);
    case K::variable: return ScalarFn::constant(1.0);
    case K::apply: {
        ScalarFn u = f.lhs();
        ScalarFn du = differentiate(u);
        if (du.is_constant(0.0)) return ScalarFn::constant(0.0);
        ScalarFn outer;
        switch (n.prim) {
        case Primitive::sin: outer = cos(u); break;
        case Primitive::cos: outer = -sin(u); break;
        case Primitive::exp: outer = f; break;
        case Primitive::ln: outer = ScalarFn::power(u, -1); break;
        case Primitive::power:
            if (n.exponent == 0) return ScalarFn::constant(0.0);
            outer = n.exponent == 1 ? ScalarFn::constant(1.0)
                                    : detail::product(ScalarFn::constant(n.exponent), ScalarFn::power(u, n.exponent - 1));
            break;
        case Primitive::poly: {
            std::vector<double> dc;
            for (std::size_t i = 1; i < n.coeffs.size(); ++i) dc.push_back(static_cast<double>(i) * n.coeffs[i]);
            if (dc.empty()) return ScalarFn::constant(0.0);
            outer = ScalarFn::poly(u, std::move(dc));
            break;
        }
        case Primitive::sign: return ScalarFn::constant(0.0);
        }
        return detail::product(outer, du);
    }
    case K::add: return detail::sum(differentiate(f.lhs()), differentiate(f.rhs()));
    case K::sub: return detail::difference(differentiate(f.lhs()), differentiate(f.rhs()));
    case K::mul:
        return detail::sum(detail::product(differentiate(f.lhs()), f.rhs()),
                           detail::product(f.lhs(), differentiate(f.rhs())));
    case K::div: {
        ScalarFn num = detail::difference(detail::product(differentiate(f.lhs()), f.rhs()),
                                          detail::product(f.lhs(), differentiate(f.rhs())));
        if (num.is_constant(0.0)) return num;
        return num / ScalarFn::power(f.rhs(), 2);
    }
    case K::neg: {
        ScalarFn d = differentiate(f.lhs());
        return d.is_constant(0.0) ? d : -d;
    }
    }
    return ScalarFn::constant(0.0);
}

} // namespace mvcalc
