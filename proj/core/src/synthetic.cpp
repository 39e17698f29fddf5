#include "exmort/synthetic.hpp"

#include "exmort/exposure.hpp"
#include "exmort/rng.hpp"

#include <cmath>

namespace exmort {

namespace {

// 2010-ish national age structure, thousands scaled to persons.
constexpr std::array<double, kNumAgeBands> kBasePopulation = {
    620000, 610000, 610000, 560000, 610000, 560000, 440000, 280000, 130000, 27000};

// Female share by band; skews female at the oldest ages.
constexpr std::array<double, kNumAgeBands> kFemaleShare = {
    0.49, 0.49, 0.50, 0.50, 0.51, 0.51, 0.52, 0.53, 0.57, 0.65};

// Annual deaths per person-year by band.
constexpr std::array<double, kNumAgeBands> kBaseRate = {
    0.0006, 0.0003, 0.0006, 0.0008, 0.0015, 0.004, 0.009, 0.025, 0.08, 0.22};

constexpr double kMaleRateFactor = 1.14;
constexpr double kFemaleRateFactor = 0.88; // ratio M/F = 1.295

constexpr double kPi = 3.14159265358979323846;

} // namespace

PopulationSeries synthetic_population(const SyntheticConfig& cfg, const std::string& label) {
    const Quarter first{cfg.first_year, 1};
    const Quarter last{cfg.last_year, 4};
    const double t0 = static_cast<double>(first.anchor_day());

    std::vector<StratumValues> counts;
    counts.reserve(static_cast<std::size_t>(last.index() - first.index() + 1));
    for (int qi = first.index(); qi <= last.index(); ++qi) {
        const Quarter q = Quarter::from_index(qi);
        const double years = (static_cast<double>(q.anchor_day()) - t0) / kDaysPerYear;
        StratumValues row{};
        for (int b = 0; b < kNumAgeBands; ++b) {
            const auto bi = static_cast<std::size_t>(b);
            const double growth = cfg.annual_growth + cfg.band_growth[bi];
            const double n = kBasePopulation[bi] * std::exp(std::log1p(growth) * years);
            row[static_cast<std::size_t>(2 * b)] = n * kFemaleShare[bi];
            row[static_cast<std::size_t>(2 * b + 1)] = n * (1.0 - kFemaleShare[bi]);
        }
        counts.push_back(row);
    }
    return PopulationSeries(label, first, std::move(counts));
}

DeathsSeries synthetic_deaths(const PopulationSeries& pop, const SyntheticConfig& cfg) {
    const MonthRange span = MonthRange::years(cfg.first_year, cfg.last_year);
    const MonthlyExposure exposure = monthly_exposure(pop, span);
    const double t0 = Month{cfg.first_year, 1}.mid_day();

    std::vector<DeathValues> counts;
    counts.reserve(static_cast<std::size_t>(span.count()));
    for (const Month& m : span.months()) {
        const double years = (m.mid_day() - t0) / kDaysPerYear;
        const double trend = std::exp(std::log1p(cfg.rate_trend) * years);
        const double season =
            1.0 + cfg.seasonal_amplitude * std::cos(2.0 * kPi * (m.mon - 7) / 12.0);
        const auto shock_it = cfg.year_shock.find(m.year);
        const double shock = shock_it == cfg.year_shock.end() ? 1.0 : shock_it->second;
        DeathValues row{};
        for (const StratumKey& s : all_strata()) {
            const auto bi = static_cast<std::size_t>(static_cast<int>(s.band));
            const double sex_factor =
                s.sex == Sex::Female ? kFemaleRateFactor : kMaleRateFactor;
            const double mu =
                exposure.person_years(m, s) * kBaseRate[bi] * sex_factor * trend * season * shock;
            PoissonSampler sampler(
                derive_seed(cfg.seed, static_cast<std::uint64_t>(m.index()) * 64 +
                                          static_cast<std::uint64_t>(s.index())));
            row[static_cast<std::size_t>(s.index())] = sampler(mu);
        }
        counts.push_back(row);
    }
    return DeathsSeries(span.first, std::move(counts));
}

} // namespace exmort
