#include "exmort/pipeline.hpp"

#include <algorithm>

namespace exmort {

MonthRange analysis_hull(const ModelSpec& spec, YearRange window_years) {
    const int y0 = std::min(spec.baseline.first, window_years.first);
    const int y1 = std::max(spec.baseline.last, window_years.last);
    return MonthRange::years(y0, y1);
}

QprResult run_qpr(const ModelSpec& spec, const DeathsSeries& deaths,
                  const PopulationSeries& population, YearRange window_years, int draws,
                  std::uint64_t seed, Aggregation aggregation) {
    spec.validate();

    const MonthRange hull = analysis_hull(spec, window_years);
    const MonthlyExposure exposure = monthly_exposure(population, hull);

    const DesignBundle design = build_design(spec, deaths, exposure);

    QprResult result;
    result.fit = fit_irls(design);

    const MonthRange window = MonthRange::years(window_years.first, window_years.last);
    result.expected = expected_deaths(result.fit, exposure, window, draws, seed);
    result.report = excess_report(deaths, result.expected, aggregation);
    return result;
}

} // namespace exmort
