#pragma once

#include "multivector.hpp"
#include "scalar_fn.hpp"

#include <memory>
#include <string>
#include <utility>

namespace mvcalc {

/// The products a curve node can apply pointwise.
enum class Star { wedge, scalar, lcontr, rcontr, geometric };

inline const char* star_name(Star s) {
    switch (s) {
    case Star::wedge: return "wedge";
    case Star::scalar: return "scalar";
    case Star::lcontr: return "lcontr";
    case Star::rcontr: return "rcontr";
    case Star::geometric: return "geometric";
    }
    return "?";
}

/// Operator spelling in the expression language.
inline const char* star_symbol(Star s) {
    switch (s) {
    case Star::wedge: return "^";
    case Star::scalar: return ".";
    case Star::lcontr: return "_|";
    case Star::rcontr: return "|_";
    case Star::geometric: return "*";
    }
    return "?";
}

inline constexpr Star kAllStars[] = {Star::wedge, Star::scalar, Star::lcontr, Star::rcontr, Star::geometric};

template <typename T>
BasicMultivector<T> apply_star(Star s, const BasicMultivector<T>& x, const BasicMultivector<T>& y) {
    switch (s) {
    case Star::wedge: return wedge(x, y);
    case Star::scalar: return scalar_product_mv(x, y);
    case Star::lcontr: return left_contraction(x, y);
    case Star::rcontr: return right_contraction(x, y);
    case Star::geometric: return geometric(x, y);
    }
    throw std::logic_error("unknown product");
}

class Curve;

struct CurveNode {
    enum class Kind { constant, scalar_times_blade, sum, product, scalar_scale, compose };

    Kind kind = Kind::constant;
    Multivector value;   // constant
    ScalarFn scalar;     // scalar_times_blade coefficient, scalar_scale factor, compose reparametrization
    BladeMask blade;     // scalar_times_blade
    Star star = Star::geometric;
    std::shared_ptr<const CurveNode> lhs, rhs;  // rhs unused by scalar_scale and compose
};

/// Multivector-valued function of one real variable, lambda -> X(lambda), as
/// an immutable DAG. Every subexpression has the same dim; composition only
/// takes a scalar reparametrization, X(phi(lambda)).
class Curve {
public:
    using Kind = CurveNode::Kind;

    static Curve constant(Multivector value) {
        CurveNode n;
        n.kind = Kind::constant;
        int d = value.dim();
        n.value = std::move(value);
        return Curve(d, std::move(n));
    }
    static Curve zero(int dim) { return constant(Multivector(dim)); }

    static Curve scalar_times_blade(int dim, ScalarFn coeff, BladeMask blade) {
        if (!valid_dim(dim)) throw std::invalid_argument("dimension must be in 1..12");
        if (!fits_dim(blade, dim))
            throw std::invalid_argument("blade " + blade_label(blade) + " exceeds dimension " + std::to_string(dim));
        CurveNode n;
        n.kind = Kind::scalar_times_blade;
        n.scalar = std::move(coeff);
        n.blade = blade;
        return Curve(dim, std::move(n));
    }
    static Curve sum(const Curve& a, const Curve& b) {
        require_same_dim(a, b);
        CurveNode n;
        n.kind = Kind::sum;
        n.lhs = a.node_;
        n.rhs = b.node_;
        return Curve(a.dim_, std::move(n));
    }
    static Curve product(Star s, const Curve& a, const Curve& b) {
        require_same_dim(a, b);
        CurveNode n;
        n.kind = Kind::product;
        n.star = s;
        n.lhs = a.node_;
        n.rhs = b.node_;
        return Curve(a.dim_, std::move(n));
    }
    static Curve scalar_scale(ScalarFn factor, const Curve& x) {
        CurveNode n;
        n.kind = Kind::scalar_scale;
        n.scalar = std::move(factor);
        n.lhs = x.node_;
        return Curve(x.dim_, std::move(n));
    }
    /// (X o phi)(lambda) = X(phi(lambda)).
    static Curve compose(const Curve& x, ScalarFn phi) {
        CurveNode n;
        n.kind = Kind::compose;
        n.scalar = std::move(phi);
        n.lhs = x.node_;
        return Curve(x.dim_, std::move(n));
    }

    int dim() const { return dim_; }
    Kind kind() const { return node_->kind; }
    const CurveNode& node() const { return *node_; }
    Curve lhs() const { return Curve(dim_, node_->lhs); }
    Curve rhs() const { return Curve(dim_, node_->rhs); }

    bool is_zero_constant() const { return node_->kind == Kind::constant && node_->value.is_zero(); }

    /// Nesting depth, leaves count 1.
    int depth() const {
        switch (node_->kind) {
        case Kind::constant:
        case Kind::scalar_times_blade: return 1;
        case Kind::sum:
        case Kind::product: return 1 + std::max(lhs().depth(), rhs().depth());
        case Kind::scalar_scale:
        case Kind::compose: return 1 + lhs().depth();
        }
        return 1;
    }

private:
    Curve(int dim, CurveNode n) : dim_(dim), node_(std::make_shared<const CurveNode>(std::move(n))) {}
    Curve(int dim, std::shared_ptr<const CurveNode> n) : dim_(dim), node_(std::move(n)) {}

    static void require_same_dim(const Curve& a, const Curve& b) {
        if (a.dim_ != b.dim_) throw DimensionMismatch(a.dim_, b.dim_);
    }

    int dim_;
    std::shared_ptr<const CurveNode> node_;
};

namespace detail {
template <typename T>
BasicMultivector<T> lift(const Multivector& m) {
    if constexpr (std::is_same_v<T, double>) {
        return m;
    } else {
        BasicMultivector<T> out(m.dim());
        for (const auto& t : m.terms()) out.unchecked_push(t.blade, T(t.coeff));
        return out;
    }
}
} // namespace detail

/// X(lambda). With T = Dual and lambda = variable(x), the deriv parts of the
/// result are X'(x): every product node is bilinear, so the lift is exact.
template <typename T>
BasicMultivector<T> evaluate(const Curve& e, const T& lambda) {
    using K = Curve::Kind;
    const auto& n = e.node();
    switch (n.kind) {
    case K::constant: return detail::lift<T>(n.value);
    case K::scalar_times_blade: return BasicMultivector<T>::blade(e.dim(), n.blade, evaluate(n.scalar, lambda));
    case K::sum: return add(evaluate(e.lhs(), lambda), evaluate(e.rhs(), lambda));
    case K::product: return apply_star(n.star, evaluate(e.lhs(), lambda), evaluate(e.rhs(), lambda));
    case K::scalar_scale: return scale(evaluate(n.scalar, lambda), evaluate(e.lhs(), lambda));
    case K::compose: return evaluate(e.lhs(), evaluate(n.scalar, lambda));
    }
    throw std::logic_error("unknown curve node");
}

inline Multivector evaluate(const Curve& e, double lambda) { return evaluate<double>(e, lambda); }

} // namespace mvcalc
