#pragma once

#include <stdexcept>
#include <string>

namespace vlc {

/// Argument outside the mathematical domain of an operation.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Malformed source specification or CLI input.
class ParseError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Exact enumeration would exceed the configured work budget.
class BudgetExceeded : public std::runtime_error {
 public:
  BudgetExceeded(const std::string& what, std::string required)
      : std::runtime_error(what), required_(std::move(required)) {}

  /// Decimal count of the work units the request needed.
  const std::string& required() const noexcept { return required_; }

 private:
  std::string required_;
};

}  // namespace vlc
