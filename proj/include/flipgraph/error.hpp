#pragma once

#include <stdexcept>
#include <string>

namespace flipgraph {

/// Bad input: malformed gluings, precondition violations, unknown edges.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A structural invariant that must hold by construction was found broken.
/// Always indicates a defect, never bad user input.
class InvariantViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Arc coordinates left the checked 64-bit range.
class CoordinateOverflow : public std::overflow_error {
 public:
  using std::overflow_error::overflow_error;
};

}  // namespace flipgraph
