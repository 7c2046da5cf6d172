#pragma once

#include <stdexcept>
#include <string>

namespace bigpast {

// Raised when a numerical routine cannot deliver its accuracy contract
// (quadrature non-convergence, overflow, negative Fisher determinant, ...).
class NumericError : public std::runtime_error {
 public:
  explicit NumericError(const std::string& what) : std::runtime_error(what) {}
};

// Raised when an index-based interval cannot be formed because the pool or
// sample is too small for the requested significance level.
class DegenerateIndexError : public std::domain_error {
 public:
  explicit DegenerateIndexError(const std::string& what)
      : std::domain_error(what) {}
};

}  // namespace bigpast
