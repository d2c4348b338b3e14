#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace ccf {

enum class ErrorKind {
  invalid_modulus,
  invalid_conductor,
  not_coprime,
  not_a_field,
  not_cyclic,
  division_by_zero,
  domain,
  not_a_unit,
  unsupported_modulus,
  insufficient_effort,
  parse,
  internal,
};

std::string_view to_string(ErrorKind kind);

/// Single exception type for the library; `kind()` tells callers which
/// contract was violated.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace ccf
