#pragma once

#include <stdexcept>
#include <string>

namespace ntkms {

// Operands from different semigroup instances or coefficient engines.
class MismatchError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Input outside an operation's domain (quotient by a non-divisor, non-core
// argument to a core-only map, beta at or below the critical exponent, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Construction-time validation failure (non-positive moment data, bad config).
class ConstructionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Symbolic computation exceeded the configured term budget.
class BudgetExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// DSL parse failure; position is a byte offset into the input.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& message, std::size_t position)
      : std::runtime_error(message + " at position " + std::to_string(position)),
        position_(position) {}
  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

}  // namespace ntkms
