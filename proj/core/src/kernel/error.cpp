#include "cdlab/kernel/error.hpp"

namespace cdlab {

const char* to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::InsufficientPrecision: return "insufficient precision";
    case ErrorKind::InvalidArgument: return "invalid argument";
    case ErrorKind::TailDominates: return "tail dominates";
    case ErrorKind::DerivativeUnderflow: return "derivative underflow";
    case ErrorKind::TooCloseToZero: return "too close to zero";
    case ErrorKind::TooCloseToNode: return "too close to node";
    case ErrorKind::ContourTooClose: return "contour too close to zero";
    case ErrorKind::NonIntegerWinding: return "non-integer winding";
    case ErrorKind::BudgetExceeded: return "budget exceeded";
    case ErrorKind::DisksOverlap: return "disks overlap at this M";
    case ErrorKind::PrecisionExhausted: return "precision exhausted";
    case ErrorKind::NotConvex: return "not convex";
    case ErrorKind::Config: return "config";
  }
  return "unknown";
}

}  // namespace cdlab
