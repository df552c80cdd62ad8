#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace letterseal {

enum class ErrorCode {
  InvalidLength,
  LowOrderPoint,
  AuthFailure,
  PaddingError,
  MacFailure,
  ParseError,
  ChunkCountError,
  Ambiguous,
  CounterExhausted,
  KidMismatch,
  NotInitialized,
  ReplayRejected,
  SkipLimit,
  StaleEpoch,
  ParityViolation,
  NotFound,
  StageNotAccepted,
  StageUnknown,
  UnknownAttack,
  Exhausted,
  Io,
};

std::string_view error_name(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what);
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

// Decoder failures carry the name of the field that could not be read.
class ParseError : public Error {
 public:
  ParseError(std::string field, const std::string& reason);
  const std::string& field() const noexcept { return field_; }

 private:
  std::string field_;
};

[[noreturn]] void fail(ErrorCode code, const std::string& what);

}  // namespace letterseal
