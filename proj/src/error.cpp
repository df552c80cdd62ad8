#include "letterseal/error.hpp"

namespace letterseal {

std::string_view error_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidLength: return "InvalidLength";
    case ErrorCode::LowOrderPoint: return "LowOrderPoint";
    case ErrorCode::AuthFailure: return "AuthFailure";
    case ErrorCode::PaddingError: return "PaddingError";
    case ErrorCode::MacFailure: return "MacFailure";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::ChunkCountError: return "ChunkCountError";
    case ErrorCode::Ambiguous: return "Ambiguous";
    case ErrorCode::CounterExhausted: return "CounterExhausted";
    case ErrorCode::KidMismatch: return "KidMismatch";
    case ErrorCode::NotInitialized: return "NotInitialized";
    case ErrorCode::ReplayRejected: return "ReplayRejected";
    case ErrorCode::SkipLimit: return "SkipLimit";
    case ErrorCode::StaleEpoch: return "StaleEpoch";
    case ErrorCode::ParityViolation: return "ParityViolation";
    case ErrorCode::NotFound: return "NotFound";
    case ErrorCode::StageNotAccepted: return "StageNotAccepted";
    case ErrorCode::StageUnknown: return "StageUnknown";
    case ErrorCode::UnknownAttack: return "UnknownAttack";
    case ErrorCode::Exhausted: return "Exhausted";
    case ErrorCode::Io: return "Io";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& what)
    : std::runtime_error(std::string(error_name(code)) + ": " + what), code_(code) {}

ParseError::ParseError(std::string field, const std::string& reason)
    : Error(ErrorCode::ParseError, field + ": " + reason), field_(std::move(field)) {}

void fail(ErrorCode code, const std::string& what) { throw Error(code, what); }

}  // namespace letterseal
