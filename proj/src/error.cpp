#include "waring/error.hpp"

namespace waring {

const char* errc_name(Errc c) {
  switch (c) {
    case Errc::DimensionMismatch: return "DimensionMismatch";
    case Errc::OutOfRange: return "OutOfRange";
    case Errc::Singular: return "Singular";
    case Errc::Unreachable: return "Unreachable";
    case Errc::OrderTooSmall: return "OrderTooSmall";
    case Errc::OrderUnsupported: return "OrderUnsupported";
    case Errc::DefectiveSpectrum: return "DefectiveSpectrum";
    case Errc::Defective: return "Defective";
    case Errc::NormalizationFailure: return "NormalizationFailure";
    case Errc::EigenvalueMismatch: return "EigenvalueMismatch";
    case Errc::ResidualTooLarge: return "ResidualTooLarge";
    case Errc::SingularPrincipalBlock: return "SingularPrincipalBlock";
    case Errc::ConditionViolated: return "ConditionViolated";
    case Errc::AlgorithmFail: return "AlgorithmFail";
    case Errc::NotPrime: return "NotPrime";
    case Errc::NotEnoughEquations: return "NotEnoughEquations";
    case Errc::Unverifiable: return "Unverifiable";
    case Errc::InternalMismatch: return "InternalMismatch";
    case Errc::Parse: return "Parse";
  }
  return "Unknown";
}

}  // namespace waring
