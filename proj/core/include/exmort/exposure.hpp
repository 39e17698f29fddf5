#pragma once

#include "exmort/series.hpp"

namespace exmort {

/// Population for one stratum at an arbitrary time coordinate (days since
/// epoch), linearly interpolated between the two nearest quarter anchors and
/// linearly extrapolated from the nearest two anchors outside the series.
double interpolate_population_at(const PopulationSeries& pop, StratumKey stratum, double t_day);

/// Builds person-years of exposure for every month in `window`:
/// mid-month population (interpolated as above) times days-in-month / 365.25.
/// The window must lie within one quarter of the series on either side;
/// otherwise throws Error{WindowOutOfRange}.
MonthlyExposure monthly_exposure(const PopulationSeries& pop, const MonthRange& window);

} // namespace exmort
