#include "heatobs/error.hpp"

namespace heatobs {

std::string_view to_string(ErrorKind kind) {
    switch (kind) {
    case ErrorKind::InvalidParameter: return "InvalidParameter";
    case ErrorKind::GridMismatch: return "GridMismatch";
    case ErrorKind::FormatError: return "FormatError";
    case ErrorKind::BlowUp: return "BlowUp";
    case ErrorKind::NonFinite: return "NonFinite";
    case ErrorKind::NoContraction: return "NoContraction";
    case ErrorKind::ZeroInitialData: return "ZeroInitialData";
    case ErrorKind::ExponentOutOfRange: return "ExponentOutOfRange";
    case ErrorKind::InvalidGeometry: return "InvalidGeometry";
    case ErrorKind::ResolutionTooCoarse: return "ResolutionTooCoarse";
    case ErrorKind::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorKind::ZeroDenominator: return "ZeroDenominator";
    case ErrorKind::EmptyWindow: return "EmptyWindow";
    case ErrorKind::BoundarySample: return "BoundarySample";
    case ErrorKind::InsufficientSamples: return "InsufficientSamples";
    case ErrorKind::NonPositiveG: return "NonPositiveG";
    case ErrorKind::BadOrdering: return "BadOrdering";
    case ErrorKind::ZeroTerminalMass: return "ZeroTerminalMass";
    case ErrorKind::ZeroEnergy: return "ZeroEnergy";
    case ErrorKind::ZeroBallMass: return "ZeroBallMass";
    case ErrorKind::ZeroInitialDifference: return "ZeroInitialDifference";
    case ErrorKind::ZeroLaterDifference: return "ZeroLaterDifference";
    case ErrorKind::ZeroObservation: return "ZeroObservation";
    case ErrorKind::ZeroDifference: return "ZeroDifference";
    case ErrorKind::InsufficientData: return "InsufficientData";
    case ErrorKind::NonPositiveTriple: return "NonPositiveTriple";
    case ErrorKind::IntegrationFailure: return "IntegrationFailure";
    case ErrorKind::ConfigInvalid: return "ConfigInvalid";
    case ErrorKind::NoReports: return "NoReports";
    }
    return "Unknown";
}

Error::Error(ErrorKind kind, const std::string& detail)
    : std::runtime_error(std::string(to_string(kind)) + ": " + detail), kind_(kind), detail_(detail) {}

void fail(ErrorKind kind, const std::string& detail) { throw Error(kind, detail); }

}  // namespace heatobs
