#pragma once

#include <stdexcept>
#include <string>

namespace uavnet {

enum class ErrorCode {
  invalid_argument,
  io,
  parse,
  validation,
  infeasible_spec,
  not_coverable,
  relay_budget,
  solver,
  verify_failed,
  internal,
};

const char* error_code_name(ErrorCode code) noexcept;

// All domain failures are reported through this exception; the code maps
// one-to-one onto the C API status values.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace uavnet
