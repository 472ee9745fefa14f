#include "error.hpp"

namespace propermap {

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidArgument: return "invalid argument";
    case ErrorCode::InvalidDomain: return "invalid domain";
    case ErrorCode::NearBoundary: return "near boundary";
    case ErrorCode::IllConditioned: return "ill-conditioned system";
    case ErrorCode::InadmissibleBase: return "inadmissible base point";
    case ErrorCode::HypothesisViolation: return "hypothesis violation";
    case ErrorCode::InvalidCombination: return "invalid combination";
    case ErrorCode::Infeasible: return "infeasible";
    case ErrorCode::StaleArtifact: return "stale artifact";
    case ErrorCode::Numerical: return "numerical failure";
  }
  return "unknown";
}

void fail(ErrorCode code, const std::string& what) { throw Error(code, what); }

}  // namespace propermap
