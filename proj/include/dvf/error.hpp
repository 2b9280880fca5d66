#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace dvf {

// Numeric values are part of the CLI contract and must not be renumbered.
enum class ErrorCode : int {
    InvalidArgument = 1,
    MixedField = 10,
    DivisionByZero = 11,
    AllCoefficientsZero = 12,
    NotIrreducible = 13,
    NotPrime = 14,
    NonUnitInverse = 20,
    PrecisionLoss = 21,
    InsufficientPrecision = 30,
    TruncationUnsound = 40,
    NotRegular = 41,
    NotUnit = 42,
    QuotientSingularity = 50,
    ZeroGradient = 51,
    ResidueUnsolvable = 52,
    StalledProgress = 53,
    ConfigRejected = 54,
    UnknownSeries = 55,
    ArityMismatch = 56,
    SyntaxError = 60,
    LiteralError = 61,
    IoError = 62,
};

std::string_view error_name(ErrorCode code) noexcept;

// Malformed input (syntax, literals, files) as opposed to a mathematical failure.
bool is_input_error(ErrorCode code) noexcept;

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what) : std::runtime_error(what), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

class SyntaxError : public Error {
public:
    // column is 1-based.
    SyntaxError(std::size_t column, std::vector<std::string> expected, const std::string& what)
        : Error(ErrorCode::SyntaxError, what), column_(column), expected_(std::move(expected)) {}

    std::size_t column() const noexcept { return column_; }
    const std::vector<std::string>& expected() const noexcept { return expected_; }

private:
    std::size_t column_;
    std::vector<std::string> expected_;
};

// The residue equation has no root in the current residue field but has one in
// a finite extension of it.
class ResidueUnsolvable : public Error {
public:
    ResidueUnsolvable(bool extension_required, const std::string& what)
        : Error(ErrorCode::ResidueUnsolvable, what), extension_required_(extension_required) {}

    bool extension_required() const noexcept { return extension_required_; }

private:
    bool extension_required_;
};

}  // namespace dvf
