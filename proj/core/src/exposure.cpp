#include "exmort/exposure.hpp"

#include "exmort/errors.hpp"

namespace exmort {

double interpolate_population_at(const PopulationSeries& pop, StratumKey stratum, double t_day) {
    const int n = pop.num_quarters();
    const std::size_t g = static_cast<std::size_t>(stratum.index());
    if (n == 1) return pop.counts_at(0)[g];

    // Bracketing anchor pair, or the nearest two anchors beyond the ends.
    int lo = 0;
    while (lo + 2 < n &&
           static_cast<double>(pop.quarter_at(lo + 1).anchor_day()) < t_day) {
        ++lo;
    }
    const double t0 = static_cast<double>(pop.quarter_at(lo).anchor_day());
    const double t1 = static_cast<double>(pop.quarter_at(lo + 1).anchor_day());
    const double v0 = pop.counts_at(lo)[g];
    const double v1 = pop.counts_at(lo + 1)[g];
    const double frac = (t_day - t0) / (t1 - t0);
    if (frac == 1.0) return v1; // anchor hit, keep it exact
    return v0 + frac * (v1 - v0);
}

MonthlyExposure monthly_exposure(const PopulationSeries& pop, const MonthRange& window) {
    const double lo = static_cast<double>(pop.first_quarter().prev().anchor_day());
    const double hi = static_cast<double>(pop.last_quarter().next().anchor_day());

    std::vector<StratumValues> person_years;
    person_years.reserve(static_cast<std::size_t>(window.count()));
    for (const Month& m : window.months()) {
        const double mid = m.mid_day();
        if (mid < lo || mid > hi) {
            throw Error(ErrorKind::WindowOutOfRange,
                        m.str() + " is more than one quarter outside the population series [" +
                            pop.first_quarter().str() + ", " + pop.last_quarter().str() + "]");
        }
        const double length_factor = m.days() / kDaysPerYear;
        StratumValues py{};
        for (int g = 0; g < kNumStrata; ++g) {
            py[static_cast<std::size_t>(g)] =
                interpolate_population_at(pop, StratumKey::from_index(g), mid) * length_factor;
        }
        person_years.push_back(py);
    }
    return MonthlyExposure(window.first, std::move(person_years));
}

} // namespace exmort
