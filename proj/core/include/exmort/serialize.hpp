#pragma once

#include "exmort/rebase.hpp"
#include "exmort/report.hpp"
#include "exmort/standardize.hpp"
#include "exmort/sweep.hpp"

#include <nlohmann/json.hpp>

#include <cstdint>
#include <iosfwd>
#include <string>

namespace exmort {

/// Run identity echoed into every output so results can be traced back to
/// the exact invocation. `config_hash` fingerprints the effective settings.
struct Provenance {
    std::string tool_version;
    std::uint64_t seed = 0;
    int draws = 0;
    std::string config_hash;
};

/// "# exmort <version> seed=<n> draws=<n> config=<hash>". Comment-prefixed
/// so the rest of the file stays plain CSV.
std::string provenance_line(const Provenance& p);
nlohmann::json provenance_json(const Provenance& p);

/// Columns: key,actual,expected_mean,expected_lo,expected_hi,excess,
/// excess_lo,excess_hi,excess_pct,excess_pct_lo,excess_pct_hi.
void write_report_csv(std::ostream& os, const ExcessReport& report);
nlohmann::json report_to_json(const ExcessReport& report);

/// Columns: baseline,qpr_mean,qpr_lo,qpr_hi,smrlr — one window per file, so
/// the writer takes the window to select.
void write_sweep_csv(std::ostream& os, const SweepTable& table, YearRange window);
nlohmann::json sweep_to_json(const SweepTable& table);

/// Columns: year,rate_per_1000 (two decimals).
void write_rates_csv(std::ostream& os, const StandardizedRateSeries& rates);

/// Columns: year,actual_deaths,expected_deaths,excess.
void write_smr_lr_csv(std::ostream& os, const SmrLrExcess& excess);
nlohmann::json smr_lr_to_json(const SmrLrFit& fit, const SmrLrExcess& excess);

/// Columns: quarter,age_band,old,new,abs_diff,rel_diff_pct; an undefined
/// relative diff (old count 0) is written as "undefined".
void write_rebase_csv(std::ostream& os, const RebaseDiff& diff);

/// ExcessReport schema with a leading `vintage` column; one row per vintage
/// plus a final `delta` row carrying the excess and percent differences.
void write_sensitivity_csv(std::ostream& os, const SensitivityResult& result);

/// Columns: month,actual,fitted_mean,lo95,hi95.
void write_fitted_csv(std::ostream& os, const std::vector<FittedMonthRow>& rows);

/// Columns: key,covid_deaths,excess,excess_lo,excess_hi; absent covid counts
/// are written as empty fields.
void write_covid_csv(std::ostream& os, const std::vector<CovidComparisonRow>& rows);

/// Coefficients, covariance, dispersion and convergence diagnostics.
nlohmann::json fit_to_json(const ModelFit& fit);

} // namespace exmort
