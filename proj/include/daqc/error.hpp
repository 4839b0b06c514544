#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace daqc {

enum class ErrorKind {
    InvalidArgument,
    InvalidSize,
    IncompatiblePair,
    EmptyProblem,
    EmptySelection,
    DimensionMismatch,
    SizeCapExceeded,
    CapExceeded,
    NumericalFailure,
    DegenerateHull,
    WrongModel,
    ParseError,
};

/// Machine-readable tag used in error JSON (e.g. "incompatible_pair").
std::string_view error_tag(ErrorKind kind);

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& message)
        : std::runtime_error(message), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

}  // namespace daqc
