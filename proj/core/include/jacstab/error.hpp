#pragma once

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace jacstab {

enum class ErrorCode {
  EmptyOrFull,
  Empty,
  InvalidGraph,
  DegreeMismatch,
  TauSum,
  ZeroTau,
  NotTreelike,
  NonzeroTotal,
  InvalidIndex,
  NoNegativeEntry,
  WrongShape,
  NoBasepoint,
  InvalidPeelOrder,
  InvalidPolarization,
  InputRange,
  DegreeOverflow,
  Parse,
};

/// Upper-snake name used in diagnostics, e.g. "TAU_SUM".
std::string_view to_string(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message, std::vector<std::string> details = {});

  ErrorCode code() const noexcept { return code_; }
  /// Message without the code prefix carried by what().
  const std::string& message() const noexcept { return message_; }
  const std::vector<std::string>& details() const noexcept { return details_; }

 private:
  ErrorCode code_;
  std::string message_;
  std::vector<std::string> details_;
};

}  // namespace jacstab
