#include "aucpower/error.hpp"

namespace aucpower {

std::string_view to_string(ErrorCode code) {
    switch (code) {
        case ErrorCode::kLengthMismatch: return "LengthMismatch";
        case ErrorCode::kEmptyClass: return "EmptyClass";
        case ErrorCode::kNonFiniteScore: return "NonFiniteScore";
        case ErrorCode::kDomainError: return "DomainError";
        case ErrorCode::kDegenerateAuroc: return "DegenerateAuroc";
        case ErrorCode::kDegenerateComparison: return "DegenerateComparison";
        case ErrorCode::kOverflow: return "Overflow";
        case ErrorCode::kPilotTooDegenerate: return "PilotTooDegenerate";
        case ErrorCode::kDegenerateSpec: return "DegenerateSpec";
        case ErrorCode::kTargetUnreachable: return "TargetUnreachable";
        case ErrorCode::kMissingColumn: return "MissingColumn";
        case ErrorCode::kBadLabel: return "BadLabel";
        case ErrorCode::kBadNumber: return "BadNumber";
        case ErrorCode::kEmptyAfterParsing: return "EmptyAfterParsing";
        case ErrorCode::kSingleClass: return "SingleClass";
        case ErrorCode::kIoError: return "IoError";
    }
    return "Unknown";
}

Error::Error(ErrorCode code, const std::string& message)
    : std::runtime_error(message), code_(code) {}

void fail(ErrorCode code, const std::string& message) {
    throw Error(code, message);
}

}  // namespace aucpower
