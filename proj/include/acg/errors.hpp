#ifndef ACG_ERRORS_HPP
#define ACG_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace acg {

// Bad user input: malformed config, out-of-range parameters, unknown keys.
struct ConfigError : std::runtime_error {
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

// Arguments outside the mathematical domain of an operation.
struct DomainError : std::invalid_argument {
  explicit DomainError(const std::string& what) : std::invalid_argument(what) {}
};

// Numerical failure: quadrature non-convergence, overflow, non-finite data.
struct NumericError : std::runtime_error {
  explicit NumericError(const std::string& what) : std::runtime_error(what) {}
};

// A caller violated an API contract (e.g. paths differing outside a block).
struct ContractViolation : std::logic_error {
  explicit ContractViolation(const std::string& what) : std::logic_error(what) {}
};

// Corrupted or incompatible on-disk data.
struct IntegrityError : std::runtime_error {
  explicit IntegrityError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace acg

#endif
