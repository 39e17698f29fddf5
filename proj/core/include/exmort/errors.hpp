#pragma once

#include <stdexcept>
#include <string>

namespace exmort {

/// Every failure the library can raise, by kind. Input/validation kinds map
/// to CLI exit code 2, numerical kinds to exit code 3.
enum class ErrorKind {
    // ingestion / data model
    MalformedRow,
    MissingStratum,
    NonContiguousQuarters,
    NonContiguousMonths,
    NegativeCount,
    NonIntegerCount,
    WindowOutOfRange,
    // design / fitting
    InvalidSpec,
    EmptyBaseline,
    StrataMismatch,
    SingularDesign,
    NonConvergence,
    DegenerateDoF,
    // projection / reporting
    WindowNotCovered,
    AggregationMismatch,
    GranularityUnavailable,
    // standardization
    QuarterNotFound,
    ZeroExposure,
    InsufficientYears,
    ZeroObservedRate,
    // rebase
    NoOverlap,
    // config / io
    ConfigError,
    IoError,
};

const char* to_string(ErrorKind kind);

/// True for kinds that signal a numerical/model failure rather than bad input.
bool is_numerical(ErrorKind kind);

class Error : public std::runtime_error {
  public:
    Error(ErrorKind kind, const std::string& message)
        : std::runtime_error(std::string(to_string(kind)) + ": " + message), kind_(kind),
          message_(message) {}

    ErrorKind kind() const noexcept { return kind_; }
    /// Message without the kind prefix.
    const std::string& message() const noexcept { return message_; }

  private:
    ErrorKind kind_;
    std::string message_;
};

} // namespace exmort
