#pragma once

#include <stdexcept>

namespace circw {

// Bad input: violated precondition, malformed file, unknown name.
class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A computation that could not produce a meaningful number (undefined mean
// direction, divergent Fisher information, no feasible candidate, ...).
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A file could not be opened, read or written.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace circw
