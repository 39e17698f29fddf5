#pragma once

#include "exmort/exposure.hpp"
#include "exmort/report.hpp"

namespace exmort {

/// One end-to-end run: exposure bridging, baseline fit, projection over the
/// analysis window, and the aggregated excess report.
struct QprResult {
    ModelFit fit;
    ExpectedDeaths expected;
    ExcessReport report;
};

/// Fits `spec` on its baseline window and projects over `window_years`.
/// Exposure is bridged once over the hull of baseline and window, so both
/// stages see identical person-years. Propagates ingestion, design and
/// fitting errors unchanged.
QprResult run_qpr(const ModelSpec& spec, const DeathsSeries& deaths,
                  const PopulationSeries& population, YearRange window_years, int draws,
                  std::uint64_t seed, Aggregation aggregation);

/// The month span covering both the baseline and the analysis window.
MonthRange analysis_hull(const ModelSpec& spec, YearRange window_years);

} // namespace exmort
