#include "eulerdet/errors.hpp"

namespace eulerdet {

std::string_view error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::UnsupportedRing: return "UnsupportedRing";
    case ErrorCode::PrecisionExhausted: return "PrecisionExhausted";
    case ErrorCode::NonSquare: return "NonSquare";
    case ErrorCode::DomainMismatch: return "DomainMismatch";
    case ErrorCode::ShapeMismatch: return "ShapeMismatch";
    case ErrorCode::InvalidComplex: return "InvalidComplex";
    case ErrorCode::NotAcyclic: return "NotAcyclic";
    case ErrorCode::NoSplitting: return "NoSplitting";
    case ErrorCode::NotNilpotent: return "NotNilpotent";
    case ErrorCode::FiltrationNotPreserved: return "FiltrationNotPreserved";
    case ErrorCode::NotSemisimple: return "NotSemisimple";
    case ErrorCode::ZeroDivisorEulerValue: return "ZeroDivisorEulerValue";
    case ErrorCode::StructureMismatch: return "StructureMismatch";
    case ErrorCode::NotTorsion: return "NotTorsion";
    case ErrorCode::BadReductionPrime: return "BadReductionPrime";
    case ErrorCode::NonMinimalModel: return "NonMinimalModel";
    case ErrorCode::PrimeEqualsP: return "PrimeEqualsP";
    case ErrorCode::UsageError: return "UsageError";
  }
  return "Unknown";
}

}  // namespace eulerdet
