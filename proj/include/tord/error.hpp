#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace tord {

enum class ErrorCode {
    Syntax,
    DivisionByZero,
    FieldMismatch,
    DimensionMismatch,
    NotInvariant,
    NotMonic,
    ZeroConstantTerm,
    Validation,
    EnumInfeasible,
    InvalidFiltration,
    Parameter,
    Io,
};

std::string_view to_string(ErrorCode code);

/// Base exception for every failure raised by the library.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(what), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

/// One broken module invariant, with the indices that witness it.
struct Violation {
    std::string code;   // NOT_COMMUTING, NOT_NILPOTENT, PHI_SINGULAR, ...
    std::string message;
    std::vector<std::size_t> witness;

    bool operator==(const Violation&) const = default;
};

class ValidationError : public Error {
public:
    explicit ValidationError(std::vector<Violation> violations);

    const std::vector<Violation>& violations() const noexcept { return violations_; }

private:
    std::vector<Violation> violations_;
};

}  // namespace tord
