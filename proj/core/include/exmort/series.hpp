#pragma once

#include "exmort/dates.hpp"
#include "exmort/strata.hpp"

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace exmort {

using DeathValues = std::array<std::int64_t, kNumStrata>;

/// Quarterly stratified resident-population counts for one estimate vintage.
/// Quarters are contiguous, every quarter carries all 20 strata, counts are
/// finite and non-negative. Immutable after construction.
class PopulationSeries {
  public:
    PopulationSeries(std::string vintage_label, Quarter first_quarter,
                     std::vector<StratumValues> counts);

    const std::string& vintage_label() const { return vintage_label_; }
    int num_quarters() const { return static_cast<int>(counts_.size()); }
    Quarter first_quarter() const { return first_; }
    Quarter last_quarter() const { return Quarter::from_index(first_.index() + num_quarters() - 1); }
    bool contains(Quarter q) const {
        return first_.index() <= q.index() && q.index() <= last_quarter().index();
    }

    Quarter quarter_at(int i) const { return Quarter::from_index(first_.index() + i); }
    const StratumValues& counts_at(int i) const { return counts_[static_cast<std::size_t>(i)]; }

    /// Throws Error{QuarterNotFound} when q is outside the series.
    const StratumValues& counts(Quarter q) const;
    double count(Quarter q, StratumKey stratum) const { return counts(q)[static_cast<std::size_t>(stratum.index())]; }
    double total(Quarter q) const;

  private:
    std::string vintage_label_;
    Quarter first_;
    std::vector<StratumValues> counts_;
};

/// Monthly stratified all-cause death counts; contiguous months, complete
/// strata, non-negative integers. Immutable after construction.
class DeathsSeries {
  public:
    DeathsSeries(Month first_month, std::vector<DeathValues> counts);

    int num_months() const { return static_cast<int>(counts_.size()); }
    Month first_month() const { return first_; }
    Month last_month() const { return Month::from_index(first_.index() + num_months() - 1); }
    bool covers(const MonthRange& window) const {
        return first_.index() <= window.first.index() && window.last.index() <= last_month().index();
    }

    Month month_at(int i) const { return Month::from_index(first_.index() + i); }
    const DeathValues& counts_at(int i) const { return counts_[static_cast<std::size_t>(i)]; }

    /// Throws Error{WindowNotCovered} when m is outside the series.
    const DeathValues& counts(Month m) const;
    std::int64_t count(Month m, StratumKey stratum) const {
        return counts(m)[static_cast<std::size_t>(stratum.index())];
    }
    std::int64_t month_total(Month m) const;

    /// Sum of the year's deaths per stratum. The year must be fully covered.
    std::array<std::int64_t, kNumStrata> year_by_stratum(int year) const;
    std::int64_t year_total(int year) const;

  private:
    Month first_;
    std::vector<DeathValues> counts_;
};

/// Covid-attributed deaths for one month, at whatever granularity the
/// source file provides. Missing granularity stays missing; it is never
/// imputed as zero.
struct CovidMonth {
    std::map<int, std::int64_t> strata;                   // stratum index -> count
    std::map<int, std::int64_t> by_age;                   // band index -> count (sex = "*")
    std::array<std::optional<std::int64_t>, kNumSexes> by_sex{}; // age = "*"
    std::optional<std::int64_t> total;                    // age = "*" and sex = "*"
};

/// Covid-attributed deaths series. Months need not be contiguous.
class CovidDeathsSeries {
  public:
    explicit CovidDeathsSeries(std::vector<std::pair<Month, CovidMonth>> months);

    int num_months() const { return static_cast<int>(months_.size()); }
    const std::vector<std::pair<Month, CovidMonth>>& months() const { return months_; }
    const CovidMonth* find(Month m) const;

    /// Month total: explicit total row, else the sum of a complete breakdown.
    std::optional<std::int64_t> month_total(Month m) const;
    /// Complete per-age-band counts for the month, from explicit age rows or
    /// by folding a complete stratum breakdown.
    std::optional<std::array<std::int64_t, kNumAgeBands>> month_by_age(Month m) const;
    std::optional<std::array<std::int64_t, kNumSexes>> month_by_sex(Month m) const;

    bool provides_total() const;
    bool provides_age() const;
    bool provides_sex() const;

  private:
    std::vector<std::pair<Month, CovidMonth>> months_; // sorted, unique
};

/// Monthly person-years of exposure per stratum, bridged from the quarterly
/// population by linear interpolation at month midpoints. Spans exactly the
/// window it was built for.
class MonthlyExposure {
  public:
    MonthlyExposure(Month first_month, std::vector<StratumValues> person_years);

    int num_months() const { return static_cast<int>(person_years_.size()); }
    Month first_month() const { return first_; }
    Month last_month() const { return Month::from_index(first_.index() + num_months() - 1); }
    MonthRange window() const { return {first_, last_month()}; }
    bool covers(const MonthRange& w) const {
        return first_.index() <= w.first.index() && w.last.index() <= last_month().index();
    }

    Month month_at(int i) const { return Month::from_index(first_.index() + i); }
    const StratumValues& person_years_at(int i) const { return person_years_[static_cast<std::size_t>(i)]; }

    /// Throws Error{WindowNotCovered} when m is outside the series.
    const StratumValues& person_years(Month m) const;
    double person_years(Month m, StratumKey stratum) const {
        return person_years(m)[static_cast<std::size_t>(stratum.index())];
    }
    double month_total(Month m) const;

    /// Sum of the year's monthly person-years per stratum; the year must be
    /// fully covered.
    StratumValues year_by_stratum(int year) const;

  private:
    Month first_;
    std::vector<StratumValues> person_years_;
};

} // namespace exmort
