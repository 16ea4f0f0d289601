#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace chipgame {

enum class ErrorCode {
  IllegalExchange,
  StepBudgetExceeded,
  DomainError,
  NotSolvable,
  TrivialGame,
  StateSpaceTooLarge,
  InvalidConfig,
  SessionNotRunning,
  UnknownSession,
  NothingToUndo,
  BadRequest,
};

constexpr std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::IllegalExchange: return "IllegalExchange";
    case ErrorCode::StepBudgetExceeded: return "StepBudgetExceeded";
    case ErrorCode::DomainError: return "DomainError";
    case ErrorCode::NotSolvable: return "NotSolvable";
    case ErrorCode::TrivialGame: return "TrivialGame";
    case ErrorCode::StateSpaceTooLarge: return "StateSpaceTooLarge";
    case ErrorCode::InvalidConfig: return "InvalidConfig";
    case ErrorCode::SessionNotRunning: return "SessionNotRunning";
    case ErrorCode::UnknownSession: return "UnknownSession";
    case ErrorCode::NothingToUndo: return "NothingToUndo";
    case ErrorCode::BadRequest: return "BadRequest";
  }
  return "Unknown";
}

// Every failure raised by the library carries one of the codes above; the
// HTTP layer and the CLI map them to status codes and exit codes.
class GameError : public std::runtime_error {
 public:
  GameError(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace chipgame
