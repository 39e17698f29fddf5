#pragma once

#include "exmort/pipeline.hpp"

#include <string>
#include <vector>

namespace exmort {

/// One cell of the vintage comparison: an age band (sexes summed) within a
/// quarter, or the quarter's total when `age_band` is "total". The relative
/// difference is undefined when the old count is zero.
struct RebaseRow {
    Quarter quarter;
    std::string age_band; // band token, or "total"
    double old_count = 0.0;
    double new_count = 0.0;
    double abs_diff = 0.0; // new - old
    bool rel_defined = true;
    double rel_diff_pct = 0.0; // 100 * (new - old) / old
};

struct RebaseDiff {
    std::string old_label;
    std::string new_label;
    std::vector<Quarter> quarters;  // the overlap, ascending
    std::vector<RebaseRow> rows;    // per quarter: one row per band, then the total
};

/// Compares two population vintages over their overlapping quarters.
/// Throws Error{NoOverlap} when the series share no quarter.
RebaseDiff rebase_diff(const PopulationSeries& old_pop, const PopulationSeries& new_pop);

/// The excess pipeline run twice with identical settings, differing only in
/// the population vintage, plus the headline difference between the runs.
struct SensitivityResult {
    ExcessReport old_report; // aggregation = total
    ExcessReport new_report;
    double delta_excess = 0.0;     // new - old
    double delta_excess_pct = 0.0; // percentage points
};

/// Propagates pipeline errors with the failing vintage's label prefixed.
SensitivityResult excess_sensitivity(const DeathsSeries& deaths, const PopulationSeries& old_pop,
                                     const PopulationSeries& new_pop, const ModelSpec& spec,
                                     YearRange window, int draws, std::uint64_t seed);

} // namespace exmort
