#pragma once

#include <stdexcept>
#include <string>

namespace degentest {

struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct PatternTooLarge : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct DisconnectedInput : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct DisconnectedPattern : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct NotTwoConnected : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct BadSPrime : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct VertexOutOfRange : std::out_of_range {
  using std::out_of_range::out_of_range;
};

struct ObstacleTooSmall : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct NTooSmall : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct CannotCertify : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Underweight : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace degentest
