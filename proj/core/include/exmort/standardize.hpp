#pragma once

#include "exmort/series.hpp"

#include <string>
#include <vector>

namespace exmort {

/// Fixed standard-population stratum shares used for direct age/sex
/// standardization.
struct StandardWeights {
    StratumValues weights{}; // sums to 1
    std::string provenance;  // e.g. "ERP 2021-Q1"
};

/// Shares of the population in `quarter`: w_g = N_g / sum_h N_h.
/// Throws Error{QuarterNotFound}.
StandardWeights standard_weights(const PopulationSeries& pop, Quarter quarter);

/// Yearly age/sex-standardized mortality rates, deaths per 1000
/// person-years, over contiguous years.
struct StandardizedRateSeries {
    int first_year = 0;
    std::vector<double> rates;

    int last_year() const { return first_year + static_cast<int>(rates.size()) - 1; }
    bool has(int year) const { return year >= first_year && year <= last_year(); }
    /// Throws Error{WindowNotCovered} when the year is outside the series.
    double rate(int year) const;
};

/// r_y = 1000 * sum_g w_g * D_gy / PY_gy over the year's stratum totals.
/// A stratum with zero person-years and zero deaths contributes nothing and
/// appends to `warnings` when given; zero person-years with deaths is
/// Error{ZeroExposure}. The year must be fully covered by both series.
double standardized_rate(const DeathsSeries& deaths, const MonthlyExposure& exposure,
                         const StandardWeights& weights, int year,
                         std::vector<std::string>* warnings = nullptr);

StandardizedRateSeries standardized_rate_series(const DeathsSeries& deaths,
                                                const MonthlyExposure& exposure,
                                                const StandardWeights& weights, YearRange years,
                                                std::vector<std::string>* warnings = nullptr);

/// Ordinary least squares of the standardized rate on calendar year.
struct SmrLrFit {
    double slope = 0.0;     // rate per 1000, per year
    double intercept = 0.0; // rate per 1000 at year 0
    YearRange baseline{0, 0};
    std::vector<double> residuals; // one per baseline year

    double predicted(int year) const { return intercept + slope * year; }
};

/// Closed-form OLS on the baseline years. Throws Error{InsufficientYears}
/// below two years and Error{WindowNotCovered} when rates are missing.
SmrLrFit fit_smr_lr(const StandardizedRateSeries& rates, YearRange baseline);

/// Point-estimate excess from the rate trend: E_y = D_y * predicted_y / r_y,
/// treating the observed-to-predicted rate ratio as a uniform scaling of
/// every stratum. No uncertainty is attached.
struct SmrLrExcessRow {
    int year = 0;
    std::int64_t actual = 0;
    double expected = 0.0;
    double excess = 0.0;
};

struct SmrLrExcess {
    std::vector<SmrLrExcessRow> rows;
    double cumulative = 0.0;
};

/// Throws Error{ZeroObservedRate} when a window year has r_y = 0 but
/// observed deaths; r_y = 0 with zero deaths yields zero excess.
SmrLrExcess smr_lr_excess(const SmrLrFit& fit, const StandardizedRateSeries& rates,
                          const DeathsSeries& deaths, YearRange window);

} // namespace exmort
