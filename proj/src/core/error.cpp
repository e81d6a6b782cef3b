#include "campsim/core/error.hpp"

namespace campsim {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::Parse: return "ParseError";
    case ErrorCode::Template: return "TemplateError";
    case ErrorCode::Transport: return "TransportError";
    case ErrorCode::RequestRejected: return "RequestRejected";
    case ErrorCode::BudgetExceeded: return "BudgetExceeded";
    case ErrorCode::Config: return "ConfigError";
    case ErrorCode::EmptyText: return "EmptyText";
    case ErrorCode::EmptyUtterance: return "EmptyUtterance";
    case ErrorCode::GenerationExhausted: return "GenerationExhausted";
    case ErrorCode::SequenceGap: return "SequenceGap";
    case ErrorCode::QuotaTooLarge: return "QuotaTooLarge";
    case ErrorCode::RubricMismatch: return "RubricMismatch";
    case ErrorCode::ScoreOutOfRange: return "ScoreOutOfRange";
    case ErrorCode::LengthMismatch: return "LengthMismatch";
    case ErrorCode::DegenerateSeries: return "DegenerateSeries";
    case ErrorCode::OrphanResult: return "OrphanResult";
    case ErrorCode::EmptyDataset: return "EmptyDataset";
    case ErrorCode::EmptyDoc: return "EmptyDoc";
    case ErrorCode::TooFewDocs: return "TooFewDocs";
    case ErrorCode::NothingToExport: return "NothingToExport";
    case ErrorCode::StageFailure: return "StageFailure";
    case ErrorCode::Io: return "IoError";
  }
  return "Error";
}

}  // namespace campsim
