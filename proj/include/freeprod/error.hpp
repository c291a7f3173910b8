#pragma once

#include <stdexcept>
#include <string>

namespace freeprod {

/// Malformed or out-of-range user input (group specs, words, parameters).
class InvalidInput : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// An enumeration or search stopped because a configured budget ran out.
class BudgetExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A construction is not applicable to the given groups.
class NotApplicable : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

}  // namespace freeprod
