#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace dreamxi {

enum class ErrorCode {
  MalformedDocument,
  MissingSection,
  InvariantViolation,
  RootNotFound,
  EmptySeries,
  LengthMismatch,
  EmptyInput,
  UnknownLabel,
  TooFewRows,
  InvalidConfig,
  WidthMismatch,
  ColdStart,
  EmptySquad,
  Infeasible,
  TooFewPlayers,
  TooLarge,
  EmptyHistory,
  ArtifactsMissing,
  ArtifactMismatch,
  SchemaMismatch,
  UnknownPlayer,
  UnknownTeam,
  InvalidInput,
  Io,
};

constexpr std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::MalformedDocument: return "MalformedDocument";
    case ErrorCode::MissingSection: return "MissingSection";
    case ErrorCode::InvariantViolation: return "InvariantViolation";
    case ErrorCode::RootNotFound: return "RootNotFound";
    case ErrorCode::EmptySeries: return "EmptySeries";
    case ErrorCode::LengthMismatch: return "LengthMismatch";
    case ErrorCode::EmptyInput: return "EmptyInput";
    case ErrorCode::UnknownLabel: return "UnknownLabel";
    case ErrorCode::TooFewRows: return "TooFewRows";
    case ErrorCode::InvalidConfig: return "InvalidConfig";
    case ErrorCode::WidthMismatch: return "WidthMismatch";
    case ErrorCode::ColdStart: return "ColdStart";
    case ErrorCode::EmptySquad: return "EmptySquad";
    case ErrorCode::Infeasible: return "Infeasible";
    case ErrorCode::TooFewPlayers: return "TooFewPlayers";
    case ErrorCode::TooLarge: return "TooLarge";
    case ErrorCode::EmptyHistory: return "EmptyHistory";
    case ErrorCode::ArtifactsMissing: return "ArtifactsMissing";
    case ErrorCode::ArtifactMismatch: return "ArtifactMismatch";
    case ErrorCode::SchemaMismatch: return "SchemaMismatch";
    case ErrorCode::UnknownPlayer: return "UnknownPlayer";
    case ErrorCode::UnknownTeam: return "UnknownTeam";
    case ErrorCode::InvalidInput: return "InvalidInput";
    case ErrorCode::Io: return "Io";
  }
  return "Unknown";
}

/// Every failure raised by the library. `code()` is stable and is what the
/// service layer reports; `what()` is a human-readable message.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(to_string(code)) + ": " + message),
        code_(code),
        detail_(message) {}

  ErrorCode code() const noexcept { return code_; }
  const std::string& detail() const noexcept { return detail_; }

 private:
  ErrorCode code_;
  std::string detail_;
};

}  // namespace dreamxi
