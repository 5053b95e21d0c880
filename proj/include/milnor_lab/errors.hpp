#pragma once

#include <stdexcept>
#include <string>

namespace milnor {

// Malformed or invalid user input (curve-spec syntax, failed validation,
// bad bounds). Maps to CLI exit code 1.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Two independent computation routes disagreed. Never expected on valid
// input; maps to CLI exit code 3.
class InconsistencyError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// An invariant was requested where it is not defined, e.g. beta of a
// reduced curve (isolated singularity).
class UndefinedInvariant : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

}  // namespace milnor
