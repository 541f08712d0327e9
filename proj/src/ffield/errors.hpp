#pragma once

#include <stdexcept>
#include <string>

namespace pib {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// malformed input: bad json, wrong dimensions, unknown builtin
class InvalidInput : public Error {
 public:
  using Error::Error;
};

// buchberger / enumeration caps hit
class ResourceLimit : public Error {
 public:
  using Error::Error;
};

// an invariant that must hold did not (group relation, family compatibility, ...)
class PropertyViolation : public Error {
 public:
  using Error::Error;
};

}  // namespace pib
