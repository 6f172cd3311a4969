#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace mriprep {

enum class ErrorCode {
    MalformedImage,
    UnsupportedFormat,
    ZeroDimension,
    InvalidImage,
    EvenKernel,
    EvenStructuringElement,
    TileGridTooFine,
    InvalidConfig,
    DimensionMismatch,
    ImageTooSmall,
    NoClassesFound,
    BadRatios,
    EmptyManifest,
    IoFailure,
    UnknownLabel,
    TooFewClasses,
    EmptyInput,
    IndexOutOfRange,
    EmptyMatrix,
    SchemaViolation,
    NonMonotoneEpochs,
    DuplicateModel,
    UsageError,
};

std::string_view code_name(ErrorCode code) noexcept;

// Every failure raised by the library carries a stable code so callers (and the
// CLI's one-line diagnostics) can dispatch on it without parsing messages.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& message);

    ErrorCode code() const noexcept { return code_; }
    const std::string& detail() const noexcept { return detail_; }

private:
    ErrorCode code_;
    std::string detail_;
};

[[noreturn]] void fail(ErrorCode code, const std::string& message);

}  // namespace mriprep
