#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace aucpower {

enum class ErrorCode {
    kLengthMismatch,
    kEmptyClass,
    kNonFiniteScore,
    kDomainError,
    kDegenerateAuroc,
    kDegenerateComparison,
    kOverflow,
    kPilotTooDegenerate,
    kDegenerateSpec,
    kTargetUnreachable,
    kMissingColumn,
    kBadLabel,
    kBadNumber,
    kEmptyAfterParsing,
    kSingleClass,
    kIoError,
};

std::string_view to_string(ErrorCode code);

// Every failure raised by the library. `row` and `column` are set by the CSV
// reader (rows are 1-based file line numbers, header is line 1); `n` is set
// when a power sweep fails at a particular sample size.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& message);

    ErrorCode code() const noexcept { return code_; }

    std::optional<std::size_t> row;
    std::optional<std::string> column;
    std::optional<std::size_t> n;

private:
    ErrorCode code_;
};

[[noreturn]] void fail(ErrorCode code, const std::string& message);

}  // namespace aucpower
