#pragma once

#include <stdexcept>
#include <string>

namespace permpat {

// Malformed input: bad permutation text, out-of-range index, bad argument.
class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// The request is well formed but too large to enumerate without an override.
class Infeasible : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace permpat
