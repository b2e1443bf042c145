#include "uavnet/error.hpp"

namespace uavnet {

const char* error_code_name(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::invalid_argument: return "E_INVALID_ARGUMENT";
    case ErrorCode::io: return "E_IO";
    case ErrorCode::parse: return "E_PARSE";
    case ErrorCode::validation: return "E_VALIDATION";
    case ErrorCode::infeasible_spec: return "E_INFEASIBLE_SPEC";
    case ErrorCode::not_coverable: return "E_NOT_COVERABLE";
    case ErrorCode::relay_budget: return "E_RELAY_BUDGET";
    case ErrorCode::solver: return "E_SOLVER";
    case ErrorCode::verify_failed: return "E_VERIFY_FAILED";
    case ErrorCode::internal: return "E_INTERNAL";
  }
  return "E_INTERNAL";
}

}  // namespace uavnet
