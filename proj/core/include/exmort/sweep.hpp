#pragma once

#include "exmort/pipeline.hpp"

#include <string>
#include <vector>

namespace exmort {

/// One (baseline, window) combination of the baseline-length sweep.
/// `ok` is false when that row's fit failed; the error message then names
/// the baseline and the other rows are unaffected.
struct SweepRow {
    YearRange baseline{0, 0};
    YearRange window{0, 0};
    bool ok = false;
    std::string error;
    double qpr_mean = 0.0; // cumulative QPR excess over the window
    double qpr_lo = 0.0;
    double qpr_hi = 0.0;
    double smrlr = 0.0; // SMR-LR cumulative excess, point estimate
};

struct SweepTable {
    int baseline_end = 0;
    std::vector<SweepRow> rows; // window-major, then baseline length ascending
};

/// Refits the model once per baseline length (shortest..longest years, all
/// ending at `template_spec.baseline.last`) and per analysis window, using
/// the same seed for every row so a one-row sweep reproduces a direct run
/// exactly. The SMR-LR column standardizes with the population shares at
/// `standard_quarter`.
SweepTable baseline_sweep(const ModelSpec& template_spec, const DeathsSeries& deaths,
                          const PopulationSeries& population,
                          const std::vector<YearRange>& windows, int shortest, int longest,
                          int draws, std::uint64_t seed, Quarter standard_quarter);

} // namespace exmort
