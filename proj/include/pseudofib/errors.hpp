#pragma once

#include <stdexcept>
#include <string>

namespace pseudofib {

/// Violated precondition of an operation (dimension mismatch, non-unit group
/// scalar, mixed base points, invalid parameters).
struct ContractViolation : std::invalid_argument {
    explicit ContractViolation(const std::string& what) : std::invalid_argument(what) {}
};

/// The span handed to the orthonormalizer is degenerate for the scalar product.
struct DegenerateSubspace : std::runtime_error {
    explicit DegenerateSubspace(const std::string& what) : std::runtime_error(what) {}
};

/// A construction that needs g(X, X) != 0 received a null direction.
struct NullDirection : std::runtime_error {
    explicit NullDirection(const std::string& what) : std::runtime_error(what) {}
};

/// Two points handed to a fibre operation do not lie on the same fibre.
struct FibreMismatch : std::runtime_error {
    explicit FibreMismatch(const std::string& what) : std::runtime_error(what) {}
};

/// The iterative kernel search found only null candidate directions.
struct DegenerateKernel : std::runtime_error {
    explicit DegenerateKernel(const std::string& what) : std::runtime_error(what) {}
};

/// A constructed basis contradicts the dimension/index bookkeeping it must satisfy.
struct ClassificationContradiction : std::logic_error {
    explicit ClassificationContradiction(const std::string& what) : std::logic_error(what) {}
};

}  // namespace pseudofib
