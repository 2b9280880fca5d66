#include "dvf/error.hpp"

namespace dvf {

std::string_view error_name(ErrorCode code) noexcept {
    switch (code) {
        case ErrorCode::InvalidArgument: return "InvalidArgument";
        case ErrorCode::MixedField: return "MixedField";
        case ErrorCode::DivisionByZero: return "DivisionByZero";
        case ErrorCode::AllCoefficientsZero: return "AllCoefficientsZero";
        case ErrorCode::NotIrreducible: return "NotIrreducible";
        case ErrorCode::NotPrime: return "NotPrime";
        case ErrorCode::NonUnitInverse: return "NonUnitInverse";
        case ErrorCode::PrecisionLoss: return "PrecisionLoss";
        case ErrorCode::InsufficientPrecision: return "InsufficientPrecision";
        case ErrorCode::TruncationUnsound: return "TruncationUnsound";
        case ErrorCode::NotRegular: return "NotRegular";
        case ErrorCode::NotUnit: return "NotUnit";
        case ErrorCode::QuotientSingularity: return "QuotientSingularity";
        case ErrorCode::ZeroGradient: return "ZeroGradient";
        case ErrorCode::ResidueUnsolvable: return "ResidueUnsolvable";
        case ErrorCode::StalledProgress: return "StalledProgress";
        case ErrorCode::ConfigRejected: return "ConfigRejected";
        case ErrorCode::UnknownSeries: return "UnknownSeries";
        case ErrorCode::ArityMismatch: return "ArityMismatch";
        case ErrorCode::SyntaxError: return "SyntaxError";
        case ErrorCode::LiteralError: return "LiteralError";
        case ErrorCode::IoError: return "IoError";
    }
    return "Unknown";
}

bool is_input_error(ErrorCode code) noexcept {
    switch (code) {
        case ErrorCode::InvalidArgument:
        case ErrorCode::NotPrime:
        case ErrorCode::NotIrreducible:
        case ErrorCode::SyntaxError:
        case ErrorCode::LiteralError:
        case ErrorCode::IoError:
        case ErrorCode::UnknownSeries:
        case ErrorCode::ArityMismatch:
            return true;
        default:
            return false;
    }
}

}  // namespace dvf
