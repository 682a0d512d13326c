#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace cantor {

enum class ErrorCode {
  PrecisionExhausted,
  InvalidGamma,
  BracketInvalid,
  TailNotSummable,
  UndecidableTail,
  PolarSet,
  GapCollapse,
  BoundViolated,
  TableExhausted,
  NotACover,
  DepthExceeded,
  Breakdown,
  Config,
};

std::string_view to_string(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace cantor
