#pragma once

#include <stdexcept>
#include <string>

namespace mvcalc {

/// Operands built over different algebra dimensions.
class DimensionMismatch : public std::invalid_argument {
public:
    DimensionMismatch(int lhs, int rhs)
        : std::invalid_argument("dimension mismatch: " + std::to_string(lhs) + " vs " + std::to_string(rhs)) {}
};

/// A scalar primitive was evaluated outside its domain (ln of a non-positive
/// value, a negative power at zero, division by zero).
class DomainError : public std::domain_error {
public:
    explicit DomainError(const std::string& what) : std::domain_error(what) {}
};

} // namespace mvcalc
