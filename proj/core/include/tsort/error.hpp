#pragma once

#include <stdexcept>
#include <string>

namespace tsort {

enum class ErrorCode {
  invalid_input,
  width_violation,
  not_exact_once,
  inapplicable,
  protocol_violation,
  division_by_zero,
  unsupported_size,
  configuration_error,
  parse_error,
};

const char* to_string(ErrorCode code) noexcept;

/// Every failure raised by the library carries one of the codes above so
/// callers (tests, the CLI) can branch on the kind of failure.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace tsort
