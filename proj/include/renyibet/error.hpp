#pragma once

#include <stdexcept>

namespace renyibet {

// Input breaks a documented precondition: wrong shape, not a PMF,
// inadmissible orders, invalid effect, and so on.
class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// The requested quantity is undefined at this point of parameter space
// (singular pivot, excluded risk limit, zero posterior mass, ...).
class SingularityError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

}  // namespace renyibet
