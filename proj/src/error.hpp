#pragma once

#include <stdexcept>
#include <string>

namespace weakf {

enum class ErrorKind {
  syntax,                 // expression text does not match the grammar
  unknown_identifier,     // identifier is neither a coordinate nor a known function
  non_constant_exponent,  // '^' not followed by a numeric literal
  domain,                 // evaluation hit log(<=0), division by zero, ...
  singular_matrix,        // pivot below threshold during elimination
  degenerate_plane,       // sectional curvature of a (nearly) dependent pair
  shape,                  // structure spec has wrong dimensions / non-symmetric g
  bad_argument,
  unknown_name,           // catalog lookup failure
  invalid_structure       // axiom residuals above tolerance, classification refused
};

/// Library-wide exception. `offset` is a 0-based character offset into the
/// source text for parse-time errors, -1 otherwise.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& msg, int offset = -1)
      : std::runtime_error(msg), kind_(kind), offset_(offset) {}

  ErrorKind kind() const noexcept { return kind_; }
  int offset() const noexcept { return offset_; }

 private:
  ErrorKind kind_;
  int offset_;
};

}  // namespace weakf
