#include "syzygy/error.hpp"

namespace syzygy {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::NonPrimitiveRay: return "NonPrimitiveRay";
    case ErrorKind::RepeatedRay: return "RepeatedRay";
    case ErrorKind::NotComplete: return "NotComplete";
    case ErrorKind::NotSmooth: return "NotSmooth";
    case ErrorKind::NotMinusOneCurve: return "NotMinusOneCurve";
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::NotToric: return "NotToric";
    case ErrorKind::NotNef: return "NotNef";
    case ErrorKind::NotAmple: return "NotAmple";
    case ErrorKind::DegenerateBundle: return "DegenerateBundle";
    case ErrorKind::HypothesesViolated: return "HypothesesViolated";
    case ErrorKind::OutOfTheoremScope: return "OutOfTheoremScope";
    case ErrorKind::PreconditionFailed: return "PreconditionFailed";
    case ErrorKind::InvalidInput: return "InvalidInput";
    case ErrorKind::EmptyGrid: return "EmptyGrid";
    case ErrorKind::ConstructionFailed: return "ConstructionFailed";
    case ErrorKind::Unbounded: return "Unbounded";
    case ErrorKind::Internal: return "InternalError";
  }
  return "InternalError";
}

bool is_input_error(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::ConstructionFailed:
    case ErrorKind::Unbounded:
    case ErrorKind::Internal:
      return false;
    default:
      return true;
  }
}

Error::Error(ErrorKind kind, const std::string& message, std::optional<std::size_t> index)
    : std::runtime_error(std::string(to_string(kind)) + ": " + message),
      kind_(kind),
      index_(index) {}

}  // namespace syzygy
