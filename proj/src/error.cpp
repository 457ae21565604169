#include "lvlab/error.hpp"

namespace lvlab {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::CapExceeded: return "CapExceeded";
    case ErrorKind::DegenerateSize: return "DegenerateSize";
    case ErrorKind::Unsupported: return "Unsupported";
    case ErrorKind::NoSquares: return "NoSquares";
    case ErrorKind::IntervalOutOfRange: return "IntervalOutOfRange";
    case ErrorKind::GridTooSmall: return "GridTooSmall";
    case ErrorKind::BudgetExceeded: return "BudgetExceeded";
    case ErrorKind::NonIntegerFrequencies: return "NonIntegerFrequencies";
    case ErrorKind::NotAnAP: return "NotAnAP";
    case ErrorKind::Parse: return "Parse";
    case ErrorKind::Io: return "Io";
  }
  return "Unknown";
}

}  // namespace lvlab
