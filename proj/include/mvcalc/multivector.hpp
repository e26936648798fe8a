#pragma once

#include "blade.hpp"
#include "error.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

namespace mvcalc {

inline bool is_exact_zero(double v) { return v == 0.0; }

/// One stored term of a multivector.
template <typename T>
struct Term {
    BladeMask blade;
    T coeff;

    bool operator==(const Term&) const = default;
};

/// Sparse element of the Euclidean Clifford algebra over R^dim.
///
/// Terms are kept sorted by ascending mask with no exact-zero coefficient, so
/// structural equality is algebraic equality. The coefficient type is a
/// template parameter so the same kernel carries dual numbers for forward-mode
/// differentiation.
template <typename T>
class BasicMultivector {
public:
    BasicMultivector() : BasicMultivector(1) {}

    explicit BasicMultivector(int dim) : dim_(dim) {
        if (!valid_dim(dim)) throw std::invalid_argument("dimension must be in 1..12, got " + std::to_string(dim));
    }

    /// Builds from arbitrary (mask, coeff) pairs; duplicates accumulate.
    BasicMultivector(int dim, std::initializer_list<Term<T>> terms) : BasicMultivector(dim) {
        Accumulator acc(dim);
        for (const auto& t : terms) {
            check_mask(t.blade);
            acc.add(t.blade, t.coeff);
        }
        terms_ = acc.finish();
    }

    static BasicMultivector scalar(int dim, T value) { return blade(dim, BladeMask{}, std::move(value)); }

    static BasicMultivector blade(int dim, BladeMask m, T value = T(1)) {
        BasicMultivector out(dim);
        out.check_mask(m);
        if (!is_exact_zero(value)) out.terms_.push_back({m, std::move(value)});
        return out;
    }

    int dim() const { return dim_; }
    bool is_zero() const { return terms_.empty(); }
    std::span<const Term<T>> terms() const { return terms_; }
    std::size_t size() const { return terms_.size(); }

    /// Coefficient of a blade (zero if absent).
    T operator[](BladeMask m) const {
        auto it = std::lower_bound(terms_.begin(), terms_.end(), m,
                                   [](const Term<T>& t, BladeMask b) { return t.blade < b; });
        return (it != terms_.end() && it->blade == m) ? it->coeff : T(0);
    }

    bool operator==(const BasicMultivector&) const = default;

    // Dense accumulation over all 2^dim masks, compressed on finish().
    class Accumulator {
    public:
        explicit Accumulator(int dim) : dim_(dim), dense_(std::size_t{1} << dim, T(0)), used_(dense_.size(), false) {}

        void add(BladeMask m, const T& v) {
            dense_[m.bits] += v;
            used_[m.bits] = true;
        }

        std::vector<Term<T>> finish() const {
            std::vector<Term<T>> out;
            for (std::uint32_t m = 0; m < dense_.size(); ++m)
                if (used_[m] && !is_exact_zero(dense_[m])) out.push_back({BladeMask{m}, dense_[m]});
            return out;
        }

        int dim() const { return dim_; }

    private:
        int dim_;
        std::vector<T> dense_;
        std::vector<bool> used_;
    };

    static BasicMultivector from_accumulator(const Accumulator& acc) {
        BasicMultivector out(acc.dim());
        out.terms_ = acc.finish();
        return out;
    }

    /// Applies f to every coefficient; zeros produced by f are dropped.
    template <typename F>
    auto map(F&& f) const {
        using U = std::decay_t<decltype(f(std::declval<const T&>()))>;
        BasicMultivector<U> out(dim_);
        for (const auto& t : terms_) {
            U v = f(t.coeff);
            if (!is_exact_zero(v)) out.unchecked_push(t.blade, std::move(v));
        }
        return out;
    }

    /// Appends a term whose mask is above every stored mask. Callers keep the
    /// canonical form.
    void unchecked_push(BladeMask m, T v) { terms_.push_back({m, std::move(v)}); }

private:
    void check_mask(BladeMask m) const {
        if (!fits_dim(m, dim_))
            throw std::invalid_argument("blade " + blade_label(m) + " exceeds dimension " + std::to_string(dim_));
    }

    int dim_;
    std::vector<Term<T>> terms_;
};

using Multivector = BasicMultivector<double>;

namespace detail {
template <typename T>
void require_same_dim(const BasicMultivector<T>& x, const BasicMultivector<T>& y) {
    if (x.dim() != y.dim()) throw DimensionMismatch(x.dim(), y.dim());
}

// Multiplication by a +-1 sign that is bit-identical to plain scaling.
template <typename T>
T signed_product(int sign, const T& a, const T& b) {
    T p = a * b;
    return sign > 0 ? p : -p;
}

// Shared bilinear driver: rule(A, B) returns {keep, sign, result mask}.
template <typename T, typename Rule>
BasicMultivector<T> bilinear(const BasicMultivector<T>& x, const BasicMultivector<T>& y, Rule rule) {
    require_same_dim(x, y);
    typename BasicMultivector<T>::Accumulator acc(x.dim());
    for (const auto& a : x.terms())
        for (const auto& b : y.terms()) {
            auto [keep, sign, mask] = rule(a.blade, b.blade);
            if (keep) acc.add(mask, signed_product(sign, a.coeff, b.coeff));
        }
    return BasicMultivector<T>::from_accumulator(acc);
}

struct ProductTerm {
    bool keep;
    int sign;
    BladeMask mask;
};
} // namespace detail

template <typename T>
BasicMultivector<T> add(const BasicMultivector<T>& x, const BasicMultivector<T>& y) {
    detail::require_same_dim(x, y);
    typename BasicMultivector<T>::Accumulator acc(x.dim());
    for (const auto& t : x.terms()) acc.add(t.blade, t.coeff);
    for (const auto& t : y.terms()) acc.add(t.blade, t.coeff);
    return BasicMultivector<T>::from_accumulator(acc);
}

template <typename S, typename T>
BasicMultivector<T> scale(const S& alpha, const BasicMultivector<T>& x) {
    return x.map([&](const T& c) -> T { return alpha * c; });
}

template <typename T>
BasicMultivector<T> negate(const BasicMultivector<T>& x) {
    return x.map([](const T& c) -> T { return -c; });
}

template <typename T>
BasicMultivector<T> subtract(const BasicMultivector<T>& x, const BasicMultivector<T>& y) {
    return add(x, negate(y));
}

/// Exterior product: e_A ^ e_B vanishes when A and B share a factor.
template <typename T>
BasicMultivector<T> wedge(const BasicMultivector<T>& x, const BasicMultivector<T>& y) {
    return detail::bilinear(x, y, [](BladeMask a, BladeMask b) {
        if (a.bits & b.bits) return detail::ProductTerm{false, 1, {}};
        return detail::ProductTerm{true, canonical_sign(a, b), BladeMask{a.bits | b.bits}};
    });
}

/// Clifford product under the Euclidean metric: e_A e_B = sign(A,B) e_{A xor B}.
template <typename T>
BasicMultivector<T> geometric(const BasicMultivector<T>& x, const BasicMultivector<T>& y) {
    return detail::bilinear(x, y, [](BladeMask a, BladeMask b) {
        return detail::ProductTerm{true, canonical_sign(a, b), BladeMask{a.bits ^ b.bits}};
    });
}

/// e_A _| e_B = <e_A e_B>_{|B|-|A|}, nonzero only for A subset of B.
template <typename T>
BasicMultivector<T> left_contraction(const BasicMultivector<T>& x, const BasicMultivector<T>& y) {
    return detail::bilinear(x, y, [](BladeMask a, BladeMask b) {
        if ((a.bits & ~b.bits) != 0) return detail::ProductTerm{false, 1, {}};
        return detail::ProductTerm{true, canonical_sign(a, b), BladeMask{b.bits & ~a.bits}};
    });
}

/// e_A |_ e_B = <e_A e_B>_{|A|-|B|}, nonzero only for B subset of A.
template <typename T>
BasicMultivector<T> right_contraction(const BasicMultivector<T>& x, const BasicMultivector<T>& y) {
    return detail::bilinear(x, y, [](BladeMask a, BladeMask b) {
        if ((b.bits & ~a.bits) != 0) return detail::ProductTerm{false, 1, {}};
        return detail::ProductTerm{true, canonical_sign(a, b), BladeMask{a.bits & ~b.bits}};
    });
}

/// Euclidean scalar product: sum of coefficient products over shared blades.
template <typename T>
T scalar_product(const BasicMultivector<T>& x, const BasicMultivector<T>& y) {
    detail::require_same_dim(x, y);
    T sum(0);
    auto xs = x.terms();
    auto ys = y.terms();
    std::size_t i = 0, j = 0;
    while (i < xs.size() && j < ys.size()) {
        if (xs[i].blade < ys[j].blade) {
            ++i;
        } else if (ys[j].blade < xs[i].blade) {
            ++j;
        } else {
            sum += xs[i].coeff * ys[j].coeff;
            ++i;
            ++j;
        }
    }
    return sum;
}

/// Scalar product lifted to a grade-0 multivector, for use as a curve product.
template <typename T>
BasicMultivector<T> scalar_product_mv(const BasicMultivector<T>& x, const BasicMultivector<T>& y) {
    return BasicMultivector<T>::scalar(x.dim(), scalar_product(x, y));
}

template <typename T>
BasicMultivector<T> grade_project(const BasicMultivector<T>& x, int k) {
    if (k < 0 || k > x.dim())
        throw std::out_of_range("grade " + std::to_string(k) + " outside 0.." + std::to_string(x.dim()));
    BasicMultivector<T> out(x.dim());
    for (const auto& t : x.terms())
        if (t.blade.grade() == k) out.unchecked_push(t.blade, t.coeff);
    return out;
}

template <typename T>
BasicMultivector<T> reversion(const BasicMultivector<T>& x) {
    BasicMultivector<T> out(x.dim());
    for (const auto& t : x.terms()) out.unchecked_push(t.blade, reversion_sign(t.blade.grade()) > 0 ? t.coeff : -t.coeff);
    return out;
}

inline double norm(const Multivector& x) { return std::sqrt(scalar_product(x, x)); }

/// Norm of the difference; the usual gap measure between two results.
inline double distance(const Multivector& x, const Multivector& y) { return norm(subtract(x, y)); }

} // namespace mvcalc
