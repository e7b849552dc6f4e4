#pragma once

#include <stdexcept>
#include <string>

namespace parikh {

/// Input that violates a structural precondition (dimension mismatch, bad
/// index, unparsable text).
class malformed_input : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A well-formed request the algorithms cannot honour (dependent generators
/// where independence is required, zero generator in a cone, ...).
class domain_error : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// A table grew past its configured size limit; bounded mode is the way out.
class limit_exceeded : public domain_error {
 public:
  using domain_error::domain_error;
};

}  // namespace parikh
