#include "exmort/errors.hpp"

namespace exmort {

const char* to_string(ErrorKind kind) {
    switch (kind) {
    case ErrorKind::MalformedRow: return "MalformedRow";
    case ErrorKind::MissingStratum: return "MissingStratum";
    case ErrorKind::NonContiguousQuarters: return "NonContiguousQuarters";
    case ErrorKind::NonContiguousMonths: return "NonContiguousMonths";
    case ErrorKind::NegativeCount: return "NegativeCount";
    case ErrorKind::NonIntegerCount: return "NonIntegerCount";
    case ErrorKind::WindowOutOfRange: return "WindowOutOfRange";
    case ErrorKind::InvalidSpec: return "InvalidSpec";
    case ErrorKind::EmptyBaseline: return "EmptyBaseline";
    case ErrorKind::StrataMismatch: return "StrataMismatch";
    case ErrorKind::SingularDesign: return "SingularDesign";
    case ErrorKind::NonConvergence: return "NonConvergence";
    case ErrorKind::DegenerateDoF: return "DegenerateDoF";
    case ErrorKind::WindowNotCovered: return "WindowNotCovered";
    case ErrorKind::AggregationMismatch: return "AggregationMismatch";
    case ErrorKind::GranularityUnavailable: return "GranularityUnavailable";
    case ErrorKind::QuarterNotFound: return "QuarterNotFound";
    case ErrorKind::ZeroExposure: return "ZeroExposure";
    case ErrorKind::InsufficientYears: return "InsufficientYears";
    case ErrorKind::ZeroObservedRate: return "ZeroObservedRate";
    case ErrorKind::NoOverlap: return "NoOverlap";
    case ErrorKind::ConfigError: return "ConfigError";
    case ErrorKind::IoError: return "IoError";
    }
    return "UnknownError";
}

bool is_numerical(ErrorKind kind) {
    switch (kind) {
    case ErrorKind::SingularDesign:
    case ErrorKind::NonConvergence:
    case ErrorKind::DegenerateDoF:
        return true;
    default:
        return false;
    }
}

} // namespace exmort
