#pragma once

#include <stdexcept>
#include <string>

namespace propermap {

enum class ErrorCode {
  InvalidArgument,
  InvalidDomain,
  NearBoundary,
  IllConditioned,
  InadmissibleBase,
  HypothesisViolation,
  InvalidCombination,
  Infeasible,
  StaleArtifact,
  Numerical,
};

const char* to_string(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] void fail(ErrorCode code, const std::string& what);

}  // namespace propermap
