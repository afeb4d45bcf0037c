#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace heatobs {

// Every failure the library can raise. The names are stable: the CLI prints
// them verbatim and config validation reports them to the user.
enum class ErrorKind {
    InvalidParameter,
    GridMismatch,
    FormatError,
    BlowUp,
    NonFinite,
    NoContraction,
    ZeroInitialData,
    ExponentOutOfRange,
    InvalidGeometry,
    ResolutionTooCoarse,
    IndexOutOfRange,
    ZeroDenominator,
    EmptyWindow,
    BoundarySample,
    InsufficientSamples,
    NonPositiveG,
    BadOrdering,
    ZeroTerminalMass,
    ZeroEnergy,
    ZeroBallMass,
    ZeroInitialDifference,
    ZeroLaterDifference,
    ZeroObservation,
    ZeroDifference,
    InsufficientData,
    NonPositiveTriple,
    IntegrationFailure,
    ConfigInvalid,
    NoReports,
};

std::string_view to_string(ErrorKind kind);

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& detail);

    ErrorKind kind() const noexcept { return kind_; }
    const std::string& detail() const noexcept { return detail_; }

private:
    ErrorKind kind_;
    std::string detail_;
};

[[noreturn]] void fail(ErrorKind kind, const std::string& detail);

inline void require(bool condition, ErrorKind kind, const std::string& detail) {
    if (!condition) fail(kind, detail);
}

}  // namespace heatobs
