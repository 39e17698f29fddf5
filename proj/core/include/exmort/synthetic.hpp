#pragma once

#include "exmort/series.hpp"

#include <array>
#include <cstdint>
#include <map>
#include <string>

namespace exmort {

/// Knobs for the demo-data generator: a small country with NZ-like age
/// structure, smooth population growth, winter-peaked seasonal mortality and
/// a slow downward rate trend. Deaths are Poisson draws around the implied
/// monthly means, deterministic in `seed`.
struct SyntheticConfig {
    int first_year = 2010;
    int last_year = 2024;
    std::uint64_t seed = 1;

    double annual_growth = 0.008; // population, all strata
    /// Extra per-band annual growth on top of annual_growth; lets tests age
    /// the population while holding age-specific rates fixed.
    std::array<double, kNumAgeBands> band_growth{};

    double rate_trend = -0.01;        // multiplicative drift per year
    double seasonal_amplitude = 0.08; // peak in July (southern winter)

    /// Rate multipliers for specific calendar years (e.g. {2022: 1.03} for a
    /// pandemic-style shock); years not listed stay at 1.
    std::map<int, double> year_shock;
};

/// Quarterly population: Q1 of first_year through Q4 of last_year.
PopulationSeries synthetic_population(const SyntheticConfig& cfg, const std::string& label);

/// Monthly stratified deaths for the same year span, generated from the
/// population via person-years x stratum rate x season.
DeathsSeries synthetic_deaths(const PopulationSeries& pop, const SyntheticConfig& cfg);

} // namespace exmort
