#include "galrep/error.hpp"

namespace galrep {

std::string_view error_code_name(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::InvalidArgument: return "invalid-argument";
    case ErrorCode::SquarefreeRequired: return "squarefree-required";
    case ErrorCode::PrecisionFailure: return "precision-failure";
    case ErrorCode::NotSquare: return "not-square";
    case ErrorCode::ExcludedPrime: return "excluded-prime";
    case ErrorCode::PairingFailure: return "pairing-failure";
    case ErrorCode::InconsistentPair: return "inconsistent-pair";
    case ErrorCode::NotSquarefree: return "not-squarefree";
    case ErrorCode::BadReduction: return "bad-reduction";
    case ErrorCode::Unsupported: return "unsupported";
    case ErrorCode::InvalidPartitioning: return "invalid-partitioning";
    case ErrorCode::Schema: return "schema";
    case ErrorCode::Internal: return "internal-error";
  }
  return "unknown";
}

}  // namespace galrep
