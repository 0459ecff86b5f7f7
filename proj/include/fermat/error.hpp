#pragma once

#include <stdexcept>
#include <string>

namespace fermat {

/// Malformed or out-of-range input (non-prime p, zero coefficient, p | n, ...).
class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A well-formed input outside an operation's hypotheses.
class PreconditionError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// A truncated power-series computation ran out of precision.
class PrecisionExhausted : public std::runtime_error {
 public:
  PrecisionExhausted(const std::string& what, unsigned long long precision)
      : std::runtime_error(what), precision_(precision) {}
  unsigned long long precision() const noexcept { return precision_; }

 private:
  unsigned long long precision_;
};

/// Two routes to the same mathematical quantity disagree.
class InternalMismatch : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace fermat
