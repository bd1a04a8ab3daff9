#pragma once

#include <stdexcept>
#include <string>

namespace woundassess {

// Sensor value outside the physically valid domain (non-finite, negative
// percentage, percent beyond the 110% sensor cap).
class InvalidReading : public std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Malformed document / CSV / config input. Message carries the location.
class ParseError : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Dataset spec whose marginal demands cannot be met by rule-truthful labels.
class InfeasibleSpec : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace woundassess
