#pragma once

#include "exmort/series.hpp"

#include <string>

namespace exmort {

/// Reads `quarter,age_band,sex,population` rows (quarter token YYYY-Qn).
/// Rows may arrive in any order; the result is chronologically sorted with
/// complete strata. Errors name the offending row or quarter.
PopulationSeries ingest_population(const std::string& path, const std::string& vintage_label);

/// Reads `month,age_band,sex,deaths` rows (month token YYYY-MM, integer counts).
DeathsSeries ingest_deaths(const std::string& path);

/// Reads `month,age_band,sex,deaths` rows where age_band and/or sex may be
/// `*` to carry marginal or total counts.
CovidDeathsSeries ingest_covid_deaths(const std::string& path);

/// Canonical writers; ingest(write(x)) round-trips exactly and writing the
/// result again is byte-identical.
void write_population_csv(const PopulationSeries& pop, const std::string& path);
void write_deaths_csv(const DeathsSeries& deaths, const std::string& path);

/// Shortest decimal form that round-trips the double exactly.
std::string format_double(double v);

} // namespace exmort
