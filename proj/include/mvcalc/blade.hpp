#pragma once

#include <bit>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace mvcalc {

inline constexpr int kMaxDim = 12;

/// Canonical basis blade e_{i1...ik}, i1 < ... < ik. Bit i set means e_{i+1}
/// is a factor; mask 0 is the scalar unit.
struct BladeMask {
    std::uint32_t bits = 0;

    constexpr BladeMask() = default;
    constexpr explicit BladeMask(std::uint32_t b) : bits(b) {}

    constexpr int grade() const { return std::popcount(bits); }
    constexpr bool is_scalar() const { return bits == 0; }

    constexpr auto operator<=>(const BladeMask&) const = default;
};

/// Blade e_i for a 1-based vector index.
constexpr BladeMask basis_vector(int index) { return BladeMask{1u << (index - 1)}; }

constexpr bool valid_dim(int dim) { return dim >= 1 && dim <= kMaxDim; }

constexpr bool fits_dim(BladeMask m, int dim) { return (m.bits >> dim) == 0; }

/// Sign picked up when the ordered factors of a are followed by those of b and
/// the concatenation is bubbled into ascending order. Repeated factors contract
/// with +1 under the Euclidean metric, so only the swap parity matters.
constexpr int canonical_sign(BladeMask a, BladeMask b) {
    std::uint32_t x = a.bits >> 1;
    int swaps = 0;
    while (x != 0) {
        swaps += std::popcount(x & b.bits);
        x >>= 1;
    }
    return (swaps & 1) ? -1 : 1;
}

/// (-1)^{k(k-1)/2}
constexpr int reversion_sign(int grade) { return ((grade * (grade - 1) / 2) & 1) ? -1 : 1; }

namespace detail {
constexpr char index_char(int i) { return i <= 9 ? static_cast<char>('0' + i) : static_cast<char>('a' + (i - 10)); }

constexpr int char_index(char c) {
    if (c >= '1' && c <= '9') return c - '0';
    if (c >= 'a' && c <= 'c') return 10 + (c - 'a');
    return -1;
}
} // namespace detail

/// "1" for the scalar blade, otherwise "e" followed by the ascending indices.
/// Indices 10..12 are written a, b, c so every index is one character.
inline std::string blade_label(BladeMask m) {
    if (m.bits == 0) return "1";
    std::string out = "e";
    for (int i = 0; i < kMaxDim; ++i)
        if (m.bits & (1u << i)) out.push_back(detail::index_char(i + 1));
    return out;
}

enum class LabelError { none, malformed, not_ascending, index_out_of_range };

struct LabelParse {
    BladeMask mask;
    LabelError error = LabelError::none;
};

/// Inverse of blade_label, validated against dim.
inline LabelParse parse_blade_label(std::string_view text, int dim) {
    if (text == "1") return {};
    if (text.size() < 2 || text.front() != 'e') return {{}, LabelError::malformed};
    std::uint32_t bits = 0;
    int last = 0;
    for (char c : text.substr(1)) {
        int idx = detail::char_index(c);
        if (idx < 0) return {{}, LabelError::malformed};
        if (idx <= last) return {{}, LabelError::not_ascending};
        if (idx > dim) return {{}, LabelError::index_out_of_range};
        bits |= 1u << (idx - 1);
        last = idx;
    }
    return {BladeMask{bits}, LabelError::none};
}

} // namespace mvcalc
