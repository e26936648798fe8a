#pragma once

// Reference computations for the tests, written independently of the library
// kernels they check.

#include <mvcalc/multivector.hpp>

#include <cstdint>
#include <utility>
#include <vector>

namespace oracle {

inline std::vector<int> indices(std::uint32_t mask) {
    std::vector<int> out;
    for (int i = 0; i < 32; ++i)
        if (mask & (1u << i)) out.push_back(i + 1);
    return out;
}

inline std::uint32_t mask_of(const std::vector<int>& idx) {
    std::uint32_t m = 0;
    for (int i : idx) m |= 1u << (i - 1);
    return m;
}

/// e_A e_B by writing out the factor list, bubble-sorting with one sign flip
/// per swap of distinct neighbours, then cancelling equal neighbours (e_i e_i = +1).
inline std::pair<int, std::uint32_t> blade_product(std::uint32_t a, std::uint32_t b) {
    std::vector<int> f = indices(a);
    for (int i : indices(b)) f.push_back(i);
    int sign = 1;
    for (std::size_t pass = 0; pass < f.size(); ++pass)
        for (std::size_t j = 0; j + 1 < f.size(); ++j)
            if (f[j] > f[j + 1]) {
                std::swap(f[j], f[j + 1]);
                sign = -sign;
            }
    std::vector<int> reduced;
    for (int i : f) {
        if (!reduced.empty() && reduced.back() == i)
            reduced.pop_back();
        else
            reduced.push_back(i);
    }
    return {sign, mask_of(reduced)};
}

/// Geometric product of two multivectors through blade_product.
inline mvcalc::Multivector geometric(const mvcalc::Multivector& x, const mvcalc::Multivector& y) {
    mvcalc::Multivector::Accumulator acc(x.dim());
    for (const auto& s : x.terms())
        for (const auto& t : y.terms()) {
            auto [sign, m] = blade_product(s.blade.bits, t.blade.bits);
            acc.add(mvcalc::BladeMask{m}, sign * s.coeff * t.coeff);
        }
    return mvcalc::Multivector::from_accumulator(acc);
}

/// Central difference of an arbitrary callable returning a multivector.
template <typename F>
mvcalc::Multivector central_difference(F&& f, double x, double h) {
    return mvcalc::scale(1.0 / (2.0 * h), mvcalc::subtract(f(x + h), f(x - h)));
}

} // namespace oracle
