#include "folred/error.hpp"

namespace folred {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::ok: return "ok";
    case ErrorCode::parse: return "parse_error";
    case ErrorCode::precondition: return "precondition_failed";
    case ErrorCode::context_mismatch: return "context_mismatch";
    case ErrorCode::non_isolated: return "non_isolated_singularity";
    case ErrorCode::identical_foliations: return "identical_foliations";
    case ErrorCode::non_reduced: return "non_reduced";
    case ErrorCode::depth_limit: return "depth_limit_exceeded";
    case ErrorCode::insufficient_order: return "insufficient_order";
    case ErrorCode::unresolved_locus: return "unresolved_locus";
    case ErrorCode::inconclusive: return "inconclusive_at_order";
    case ErrorCode::not_a_symmetry: return "not_a_symmetry";
    case ErrorCode::internal: return "internal_error";
    case ErrorCode::io: return "io_error";
  }
  return "unknown";
}

}  // namespace folred
