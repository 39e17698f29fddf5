#include "exmort/sweep.hpp"

#include "exmort/errors.hpp"
#include "exmort/standardize.hpp"

#include <cmath>
#include <limits>

namespace exmort {

namespace {

double smr_lr_column(const ModelSpec& spec, const DeathsSeries& deaths,
                     const PopulationSeries& population, YearRange window,
                     Quarter standard_quarter) {
    const MonthRange hull = analysis_hull(spec, window);
    const MonthlyExposure exposure = monthly_exposure(population, hull);
    const StandardWeights weights = standard_weights(population, standard_quarter);

    const YearRange all{std::min(spec.baseline.first, window.first),
                        std::max(spec.baseline.last, window.last)};
    const StandardizedRateSeries rates =
        standardized_rate_series(deaths, exposure, weights, all);
    const SmrLrFit fit = fit_smr_lr(rates, spec.baseline);
    return smr_lr_excess(fit, rates, deaths, window).cumulative;
}

} // namespace

SweepTable baseline_sweep(const ModelSpec& template_spec, const DeathsSeries& deaths,
                          const PopulationSeries& population,
                          const std::vector<YearRange>& windows, int shortest, int longest,
                          int draws, std::uint64_t seed, Quarter standard_quarter) {
    if (shortest < 2 || longest < shortest)
        throw Error(ErrorKind::InvalidSpec, "sweep lengths must satisfy 2 <= shortest <= longest");

    SweepTable table;
    table.baseline_end = template_spec.baseline.last;

    for (const YearRange& window : windows) {
        for (int len = shortest; len <= longest; ++len) {
            SweepRow row;
            row.baseline = YearRange{table.baseline_end - len + 1, table.baseline_end};
            row.window = window;
            ModelSpec spec = template_spec;
            spec.baseline = row.baseline;
            try {
                QprResult run =
                    run_qpr(spec, deaths, population, window, draws, seed, Aggregation::Total);
                const ExcessRow& total = run.report.rows.front();
                row.qpr_mean = total.excess;
                row.qpr_lo = total.excess_lo;
                row.qpr_hi = total.excess_hi;
                row.smrlr = smr_lr_column(spec, deaths, population, window, standard_quarter);
                row.ok = true;
            } catch (const Error& e) {
                row.ok = false;
                row.error = "baseline " + row.baseline.str() + ": " + e.what();
                row.qpr_mean = row.qpr_lo = row.qpr_hi = row.smrlr =
                    std::numeric_limits<double>::quiet_NaN();
            }
            table.rows.push_back(std::move(row));
        }
    }
    return table;
}

} // namespace exmort
