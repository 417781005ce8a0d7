#pragma once

#include <stdexcept>
#include <string>

namespace prolsm {

// Bad caller input: out-of-range index, invalid interval, inconsistent sizes.
class InputError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

// Internal numerical failure (non-convergent iteration, corrupted basis).
// Signals a bug or an unsupported parameter regime, never bad input.
class NumericalError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

} // namespace prolsm
