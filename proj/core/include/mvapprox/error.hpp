#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace mvapprox {

enum class ErrorCode {
    NonMonotoneGrid,
    DegreeOutOfRange,
    ExtrapolationNotAllowed,
    NotSymmetric,
    NotPositiveDefinite,
    DimensionMismatch,
    SingularSystem,
    GramSchmidtBreakdown,
    RouteDisagreement,
    StencilTooWide,
    BlockMismatch,
    EpsilonOutOfRange,
    InvalidArgument,
};

std::string_view to_string(ErrorCode code) noexcept;

// All library failures are reported through this type. The code is stable
// and machine-checkable; the message carries the numbers that triggered it.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

}  // namespace mvapprox
