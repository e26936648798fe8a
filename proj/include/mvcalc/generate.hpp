#pragma once

#include "curve.hpp"

#include <cstdint>
#include <random>
#include <vector>

namespace mvcalc::gen {

/// Seeded source for every random input. Draws are mapped by hand from the
/// 64-bit engine output so sequences are identical across standard libraries.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next() { return engine_(); }

    /// Uniform in [lo, hi).
    double uniform(double lo, double hi) { return lo + (hi - lo) * (static_cast<double>(next() >> 11) * 0x1.0p-53); }

    /// Uniform integer in [0, n).
    int below(int n) { return static_cast<int>(next() % static_cast<std::uint64_t>(n)); }

    bool chance(double p) { return uniform(0.0, 1.0) < p; }

private:
    std::mt19937_64 engine_;
};

/// Independent per-trial seed, so a single trial replays without the others.
constexpr std::uint64_t trial_seed(std::uint64_t seed, std::uint64_t index) {
    std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (index + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

struct CurveShape {
    int max_depth = 6;      // curve DAG depth, leaves count 1
    int scalar_depth = 2;   // nesting of scalar primitives inside a leaf
    int max_leaf_terms = 3; // nonzero terms in a constant leaf
};

inline double coefficient(Rng& rng) { return rng.uniform(-1.0, 1.0); }

inline double lambda(Rng& rng) { return rng.uniform(-2.0, 2.0); }

inline BladeMask blade(Rng& rng, int dim) { return BladeMask{static_cast<std::uint32_t>(rng.below(1 << dim))}; }

/// Dense-ish random multivector, every coefficient in [-1, 1].
inline Multivector multivector(Rng& rng, int dim, double density = 0.7) {
    Multivector::Accumulator acc(dim);
    for (std::uint32_t m = 0; m < (1u << dim); ++m)
        if (rng.chance(density)) acc.add(BladeMask{m}, coefficient(rng));
    return Multivector::from_accumulator(acc);
}

/// Sparse multivector with 1..max_terms terms.
inline Multivector sparse_multivector(Rng& rng, int dim, int max_terms) {
    Multivector::Accumulator acc(dim);
    int terms = 1 + rng.below(max_terms);
    for (int i = 0; i < terms; ++i) acc.add(blade(rng, dim), coefficient(rng));
    return Multivector::from_accumulator(acc);
}

/// Random smooth scalar function defined on all of R. ln, negative powers and
/// divisors only ever see arguments bounded below by 0.5.
inline ScalarFn scalar(Rng& rng, int depth) {
    auto t = ScalarFn::variable();
    auto c = [&] { return ScalarFn::constant(coefficient(rng)); };
    auto positive = [&](ScalarFn u) { return ScalarFn::constant(1.5) + (rng.chance(0.5) ? sin(u) : cos(u)); };

    if (depth <= 1 || rng.chance(0.25)) {
        switch (rng.below(4)) {
        case 0: return c();
        case 1: return t;
        case 2: return ScalarFn::poly(t, {coefficient(rng), coefficient(rng)});
        default: return ScalarFn::poly(t, {coefficient(rng), coefficient(rng), 0.5 * coefficient(rng)});
        }
    }
    ScalarFn u = scalar(rng, depth - 1);
    switch (rng.below(10)) {
    case 0: return sin(u);
    case 1: return cos(u);
    case 2: return exp(ScalarFn::constant(0.5) * sin(u));
    case 3: return ln(positive(u));
    case 4: {
        ScalarFn base = positive(u);
        return ScalarFn::power(base, -1 - rng.below(2));
    }
    case 5: return ScalarFn::power(sin(u), 2 + rng.below(2));
    case 6: return u / positive(scalar(rng, depth - 1));
    case 7: return u + scalar(rng, depth - 1);
    case 8: return u - scalar(rng, depth - 1);
    default: return u * scalar(rng, depth - 1);
    }
}

/// Bounded reparametrization for composition nodes.
inline ScalarFn reparametrization(Rng& rng) {
    auto t = ScalarFn::variable();
    switch (rng.below(4)) {
    case 0: return sin(t);
    case 1: return cos(ScalarFn::poly(t, {coefficient(rng), coefficient(rng)}));
    case 2: return ScalarFn::poly(t, {coefficient(rng), coefficient(rng)});
    default: return scalar(rng, 2);
    }
}

inline Curve leaf(Rng& rng, int dim, const CurveShape& shape) {
    if (rng.chance(0.3)) return Curve::constant(sparse_multivector(rng, dim, shape.max_leaf_terms));
    ScalarFn coeff = scalar(rng, shape.scalar_depth);
    return Curve::scalar_times_blade(dim, coeff, blade(rng, dim));
}

/// Random curve of depth at most shape.max_depth.
inline Curve curve(Rng& rng, int dim, const CurveShape& shape) {
    if (shape.max_depth <= 1 || rng.chance(0.25)) return leaf(rng, dim, shape);
    CurveShape sub = shape;
    sub.max_depth = shape.max_depth - 1;
    switch (rng.below(8)) {
    case 0:
    case 1: {
        Curve a = curve(rng, dim, sub);
        return Curve::sum(a, curve(rng, dim, sub));
    }
    case 2:
    case 3:
    case 4: {
        Star s = kAllStars[rng.below(5)];
        Curve a = curve(rng, dim, sub);
        return Curve::product(s, a, curve(rng, dim, sub));
    }
    case 5:
    case 6: {
        ScalarFn f = scalar(rng, shape.scalar_depth);
        return Curve::scalar_scale(f, curve(rng, dim, sub));
    }
    default: {
        Curve x = curve(rng, dim, sub);
        return Curve::compose(x, reparametrization(rng));
    }
    }
}

} // namespace mvcalc::gen
