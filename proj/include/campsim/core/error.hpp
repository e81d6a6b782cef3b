#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace campsim {

/// Failure categories surfaced by pipeline operations. Validators never throw;
/// they return reports. Everything else signals failure with campsim::Error.
enum class ErrorCode {
  Parse,
  Template,
  Transport,
  RequestRejected,
  BudgetExceeded,
  Config,
  EmptyText,
  EmptyUtterance,
  GenerationExhausted,
  SequenceGap,
  QuotaTooLarge,
  RubricMismatch,
  ScoreOutOfRange,
  LengthMismatch,
  DegenerateSeries,
  OrphanResult,
  EmptyDataset,
  EmptyDoc,
  TooFewDocs,
  NothingToExport,
  StageFailure,
  Io,
};

std::string_view to_string(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace campsim
