#include "exmort/standardize.hpp"

#include "exmort/errors.hpp"

#include <cmath>

namespace exmort {

StandardWeights standard_weights(const PopulationSeries& pop, Quarter quarter) {
    const StratumValues& counts = pop.counts(quarter);
    double total = 0.0;
    for (double v : counts) total += v;
    if (total <= 0.0)
        throw Error(ErrorKind::ZeroExposure,
                    "standard population at " + quarter.str() + " is empty");

    StandardWeights w;
    w.provenance = pop.vintage_label() + " " + quarter.str();
    for (int g = 0; g < kNumStrata; ++g)
        w.weights[static_cast<std::size_t>(g)] = counts[static_cast<std::size_t>(g)] / total;
    return w;
}

double StandardizedRateSeries::rate(int year) const {
    if (!has(year))
        throw Error(ErrorKind::WindowNotCovered,
                    "no standardized rate for " + std::to_string(year));
    return rates[static_cast<std::size_t>(year - first_year)];
}

double standardized_rate(const DeathsSeries& deaths, const MonthlyExposure& exposure,
                         const StandardWeights& weights, int year,
                         std::vector<std::string>* warnings) {
    const auto d = deaths.year_by_stratum(year);
    const StratumValues py = exposure.year_by_stratum(year);

    double rate = 0.0;
    for (int g = 0; g < kNumStrata; ++g) {
        const auto gi = static_cast<std::size_t>(g);
        if (py[gi] <= 0.0) {
            if (d[gi] > 0)
                throw Error(ErrorKind::ZeroExposure,
                            "stratum " + StratumKey::from_index(g).label() + " in " +
                                std::to_string(year) + " has deaths but no person-years");
            if (warnings)
                warnings->push_back("stratum " + StratumKey::from_index(g).label() + " in " +
                                    std::to_string(year) +
                                    " has no person-years; contributes 0 to the rate");
            continue;
        }
        rate += weights.weights[gi] * static_cast<double>(d[gi]) / py[gi];
    }
    return 1000.0 * rate;
}

StandardizedRateSeries standardized_rate_series(const DeathsSeries& deaths,
                                                const MonthlyExposure& exposure,
                                                const StandardWeights& weights, YearRange years,
                                                std::vector<std::string>* warnings) {
    StandardizedRateSeries out;
    out.first_year = years.first;
    out.rates.reserve(static_cast<std::size_t>(years.count()));
    for (int y = years.first; y <= years.last; ++y)
        out.rates.push_back(standardized_rate(deaths, exposure, weights, y, warnings));
    return out;
}

SmrLrFit fit_smr_lr(const StandardizedRateSeries& rates, YearRange baseline) {
    const int n = baseline.count();
    if (n < 2)
        throw Error(ErrorKind::InsufficientYears,
                    "rate trend needs at least 2 baseline years, got " + std::to_string(n));

    double sx = 0.0, sy = 0.0;
    for (int y = baseline.first; y <= baseline.last; ++y) {
        sx += y;
        sy += rates.rate(y);
    }
    // Center before forming cross products; consecutive calendar years make
    // the raw sums ill-conditioned (x ~ 2e3, x^2 ~ 4e6) and the subtraction
    // form sxy - n*xbar*ybar cancels away most of the significant digits.
    const double xbar = sx / n;
    const double ybar = sy / n;
    double sxx_c = 0.0, sxy_c = 0.0;
    for (int y = baseline.first; y <= baseline.last; ++y) {
        const double dx = y - xbar;
        sxx_c += dx * dx;
        sxy_c += dx * (rates.rate(y) - ybar);
    }

    SmrLrFit fit;
    fit.baseline = baseline;
    fit.slope = sxy_c / sxx_c;
    fit.intercept = ybar - fit.slope * xbar;
    fit.residuals.reserve(static_cast<std::size_t>(n));
    for (int y = baseline.first; y <= baseline.last; ++y)
        fit.residuals.push_back(rates.rate(y) - fit.predicted(y));
    return fit;
}

SmrLrExcess smr_lr_excess(const SmrLrFit& fit, const StandardizedRateSeries& rates,
                          const DeathsSeries& deaths, YearRange window) {
    SmrLrExcess out;
    out.rows.reserve(static_cast<std::size_t>(window.count()));
    for (int y = window.first; y <= window.last; ++y) {
        SmrLrExcessRow row;
        row.year = y;
        row.actual = deaths.year_total(y);
        const double observed = rates.rate(y);
        if (observed <= 0.0) {
            if (row.actual > 0)
                throw Error(ErrorKind::ZeroObservedRate,
                            "observed standardized rate for " + std::to_string(y) +
                                " is zero but deaths were recorded");
            row.expected = 0.0;
            row.excess = 0.0;
        } else {
            row.expected = static_cast<double>(row.actual) * fit.predicted(y) / observed;
            row.excess = static_cast<double>(row.actual) - row.expected;
        }
        out.cumulative += row.excess;
        out.rows.push_back(row);
    }
    return out;
}

} // namespace exmort
