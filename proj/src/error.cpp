#include "mriprep/error.hpp"

namespace mriprep {

std::string_view code_name(ErrorCode code) noexcept {
    switch (code) {
        case ErrorCode::MalformedImage: return "MalformedImage";
        case ErrorCode::UnsupportedFormat: return "UnsupportedFormat";
        case ErrorCode::ZeroDimension: return "ZeroDimension";
        case ErrorCode::InvalidImage: return "InvalidImage";
        case ErrorCode::EvenKernel: return "EvenKernel";
        case ErrorCode::EvenStructuringElement: return "EvenStructuringElement";
        case ErrorCode::TileGridTooFine: return "TileGridTooFine";
        case ErrorCode::InvalidConfig: return "InvalidConfig";
        case ErrorCode::DimensionMismatch: return "DimensionMismatch";
        case ErrorCode::ImageTooSmall: return "ImageTooSmall";
        case ErrorCode::NoClassesFound: return "NoClassesFound";
        case ErrorCode::BadRatios: return "BadRatios";
        case ErrorCode::EmptyManifest: return "EmptyManifest";
        case ErrorCode::IoFailure: return "IoFailure";
        case ErrorCode::UnknownLabel: return "UnknownLabel";
        case ErrorCode::TooFewClasses: return "TooFewClasses";
        case ErrorCode::EmptyInput: return "EmptyInput";
        case ErrorCode::IndexOutOfRange: return "IndexOutOfRange";
        case ErrorCode::EmptyMatrix: return "EmptyMatrix";
        case ErrorCode::SchemaViolation: return "SchemaViolation";
        case ErrorCode::NonMonotoneEpochs: return "NonMonotoneEpochs";
        case ErrorCode::DuplicateModel: return "DuplicateModel";
        case ErrorCode::UsageError: return "UsageError";
    }
    return "Unknown";
}

Error::Error(ErrorCode code, const std::string& message)
    : std::runtime_error(std::string(code_name(code)) + ": " + message), code_(code), detail_(message) {}

void fail(ErrorCode code, const std::string& message) { throw Error(code, message); }

}  // namespace mriprep
