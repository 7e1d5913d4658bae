#pragma once

#include <stdexcept>
#include <string>

namespace oscspec {

enum class ErrorCode {
  invalid_parameters,
  no_convergence,
  size_exceeded,
  resonance,
  step_underflow,
  monotonicity_violation,
  config_parse,
};

const char* to_string(ErrorCode code) noexcept;

/// Single exception type for every module; the code identifies the failure class.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

inline const char* to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::invalid_parameters: return "invalid-parameters";
    case ErrorCode::no_convergence: return "no-convergence";
    case ErrorCode::size_exceeded: return "size-exceeded";
    case ErrorCode::resonance: return "resonance";
    case ErrorCode::step_underflow: return "step-underflow";
    case ErrorCode::monotonicity_violation: return "monotonicity-violation";
    case ErrorCode::config_parse: return "config-parse";
  }
  return "unknown";
}

}  // namespace oscspec
