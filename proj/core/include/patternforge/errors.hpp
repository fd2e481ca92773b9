#pragma once

#include <stdexcept>
#include <string>

namespace patternforge {

/// Malformed textual or JSON input. The message names the offending location.
class ParseError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A request exceeds the combinatorial budget of an exhaustive routine.
class BudgetError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace patternforge
