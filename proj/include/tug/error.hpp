#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace tug {

/// Failure categories surfaced to callers and to batch_summary.csv.
enum class ErrorKind {
  MissingKey,
  InvalidValue,
  MissingColumn,
  TooShort,
  AllGap,
  GapTooLong,
  NoStandExit,
  NoTurnEntry,
  NoTurnExit,
  NoChairReturn,
  NeverMoving,
  DegenerateAxis,
  AllStationary,
  PhaseTooShort,
  NoLegLength,
  InfeasibleSpec,
  IoError,
  OutputExists,
  UsageError,
  UnsupportedFeature,
  Internal,
};

const char* error_kind_name(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& message) {
  throw Error(kind, message);
}

/// Non-fatal quality notes accumulated while processing one trial.
using Warnings = std::vector<std::string>;

inline void warn(Warnings* sink, std::string message) {
  if (sink != nullptr) sink->push_back(std::move(message));
}

}  // namespace tug
