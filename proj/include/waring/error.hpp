#pragma once

#include <stdexcept>
#include <string>

namespace waring {

enum class Errc {
  DimensionMismatch,
  OutOfRange,
  Singular,
  Unreachable,
  OrderTooSmall,
  OrderUnsupported,
  DefectiveSpectrum,
  Defective,
  NormalizationFailure,
  EigenvalueMismatch,
  ResidualTooLarge,
  SingularPrincipalBlock,
  ConditionViolated,
  AlgorithmFail,
  NotPrime,
  NotEnoughEquations,
  Unverifiable,
  InternalMismatch,
  Parse,
};

const char* errc_name(Errc c);

// Every library failure is one of these. `stage` names the pipeline step
// that raised it (may be empty for leaf routines).
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what, std::string stage = {})
      : std::runtime_error(what), code_(code), stage_(std::move(stage)) {}

  Errc code() const noexcept { return code_; }
  const std::string& stage() const noexcept { return stage_; }

 private:
  Errc code_;
  std::string stage_;
};

}  // namespace waring
