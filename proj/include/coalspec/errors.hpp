#pragma once

#include <stdexcept>
#include <string>

namespace coalspec {

// Precondition violated by the caller (mismatched ground sets, pi not
// below rho, division by zero, ...).
class domain_error : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Requested object would exceed a configured size cap.
class size_limit_error : public std::length_error {
 public:
  using std::length_error::length_error;
};

}  // namespace coalspec
