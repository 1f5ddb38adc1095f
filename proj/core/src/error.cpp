#include "tsort/error.hpp"

namespace tsort {

const char* to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::invalid_input: return "invalid-input";
    case ErrorCode::width_violation: return "width-violation";
    case ErrorCode::not_exact_once: return "not-exact-once";
    case ErrorCode::inapplicable: return "inapplicable";
    case ErrorCode::protocol_violation: return "protocol-violation";
    case ErrorCode::division_by_zero: return "division-by-zero";
    case ErrorCode::unsupported_size: return "unsupported-size";
    case ErrorCode::configuration_error: return "configuration-error";
    case ErrorCode::parse_error: return "parse-error";
  }
  return "unknown";
}

}  // namespace tsort
