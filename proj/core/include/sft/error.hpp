#pragma once

#include <stdexcept>
#include <string>

namespace sft {

/// Input data violates a structural invariant (malformed surface, bad shape,
/// dangling reference). The message names the violated invariant.
class ValidationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Well-formed input outside the mathematical domain of an operation
/// (profile evaluated at r <= 0, degenerate endpoint, inadmissible region).
class DomainError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Numerical procedure failed to meet its own accuracy contract.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace sft
