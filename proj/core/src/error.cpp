#include "jacstab/error.hpp"

namespace jacstab {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::EmptyOrFull: return "EMPTY_OR_FULL";
    case ErrorCode::Empty: return "EMPTY";
    case ErrorCode::InvalidGraph: return "INVALID_GRAPH";
    case ErrorCode::DegreeMismatch: return "DEGREE_MISMATCH";
    case ErrorCode::TauSum: return "TAU_SUM";
    case ErrorCode::ZeroTau: return "ZERO_TAU";
    case ErrorCode::NotTreelike: return "NOT_TREELIKE";
    case ErrorCode::NonzeroTotal: return "NONZERO_TOTAL";
    case ErrorCode::InvalidIndex: return "INVALID_INDEX";
    case ErrorCode::NoNegativeEntry: return "NO_NEGATIVE_ENTRY";
    case ErrorCode::WrongShape: return "WRONG_SHAPE";
    case ErrorCode::NoBasepoint: return "NO_BASEPOINT";
    case ErrorCode::InvalidPeelOrder: return "INVALID_PEEL_ORDER";
    case ErrorCode::InvalidPolarization: return "INVALID_POLARIZATION";
    case ErrorCode::InputRange: return "INPUT_RANGE";
    case ErrorCode::DegreeOverflow: return "DEGREE_OVERFLOW";
    case ErrorCode::Parse: return "PARSE";
  }
  return "UNKNOWN";
}

Error::Error(ErrorCode code, const std::string& message, std::vector<std::string> details)
    : std::runtime_error(std::string(to_string(code)) + ": " + message),
      code_(code),
      message_(message),
      details_(std::move(details)) {}

}  // namespace jacstab
