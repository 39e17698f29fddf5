#pragma once

#include "exmort/expected.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace exmort {

enum class Aggregation { Total, Year, Month, AgeBand, Sex };

Aggregation parse_aggregation(const std::string& token);
std::string to_string(Aggregation agg);

/// One aggregated excess row. `key` is "total", a year "2021", a month
/// "2021-03", an age band "80-89", or a sex "F"/"M" depending on the
/// report's aggregation.
struct ExcessRow {
    std::string key;
    double actual = 0.0;
    double expected_mean = 0.0;
    double expected_lo = 0.0;
    double expected_hi = 0.0;
    double excess = 0.0;
    double excess_lo = 0.0;
    double excess_hi = 0.0;
    double excess_pct = 0.0;
    double excess_pct_lo = 0.0;
    double excess_pct_hi = 0.0;
};

/// Excess deaths at one aggregation. Actual deaths are treated as fixed;
/// intervals carry only expected-death uncertainty, so the excess CI is the
/// reflected expected CI and the percent CI is the 2.5/97.5 percentile of
/// the per-draw ratio 100*(actual - E_b)/E_b.
struct ExcessReport {
    Aggregation aggregation = Aggregation::Total;
    MonthRange window{{0, 1}, {0, 1}};
    std::uint64_t seed = 0;
    int num_draws = 0;
    std::vector<ExcessRow> rows;
    std::vector<std::string> warnings;
};

/// Aggregates actual deaths and every expected draw to the requested keys.
/// CI bounds are empirical 2.5/97.5 percentiles of the aggregated draws.
/// Throws Error{AggregationMismatch} when an age_band or sex report is
/// requested from a projection without per-stratum cells, and
/// Error{WindowNotCovered} when `actual` does not span the window.
ExcessReport excess_report(const DeathsSeries& actual, const ExpectedDeaths& expected,
                           Aggregation agg);

/// Excess rows joined with covid-attributed deaths at the same aggregation.
/// Left join: every excess row appears; covid counts the source cannot
/// provide stay absent rather than being imputed as zero.
struct CovidComparisonRow {
    std::string key;
    std::optional<std::int64_t> covid;
    double excess = 0.0;
    double excess_lo = 0.0;
    double excess_hi = 0.0;
};

/// Throws Error{AggregationMismatch} when `agg` differs from the report's,
/// and Error{GranularityUnavailable} when the covid source lacks the
/// breakdown (e.g. an age_band join from a totals-only file).
std::vector<CovidComparisonRow> covid_comparison(const ExcessReport& report,
                                                 const CovidDeathsSeries& covid, Aggregation agg);

/// Monthly fitted-vs-actual series: plug-in mean and 95% band per month,
/// next to observed deaths. Drives the model-fit diagnostic output.
struct FittedMonthRow {
    Month month;
    std::int64_t actual = 0;
    double fitted_mean = 0.0;
    double lo95 = 0.0;
    double hi95 = 0.0;
};

std::vector<FittedMonthRow> monthly_fitted(const ExpectedDeaths& expected,
                                           const DeathsSeries& actual);

} // namespace exmort
