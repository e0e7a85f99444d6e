#pragma once

#include <stdexcept>
#include <string>

namespace cyheight {

// Bad parameters supplied by the caller (composite p, gcd(p, m) != 1, ...).
class InvalidInput : public std::invalid_argument {
  public:
    using std::invalid_argument::invalid_argument;
};

// A configured size limit would be exceeded. The message names the budget.
class BudgetExceeded : public std::runtime_error {
  public:
    BudgetExceeded(std::string budget, const std::string& what)
        : std::runtime_error(what), budget_(std::move(budget)) {}

    const std::string& budget() const noexcept { return budget_; }

  private:
    std::string budget_;
};

// p-adic precision ran out after all allowed retries.
class PrecisionExhausted : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

// An internal consistency check failed: a non-integral zeta coefficient, a
// Teichmueller lift that does not stabilise, a negative point count. These
// indicate a bug rather than bad input.
class InternalError : public std::logic_error {
  public:
    using std::logic_error::logic_error;
};

}  // namespace cyheight
