#include "support.hpp"

#include "exmort/errors.hpp"
#include "exmort/rng.hpp"

#include <atomic>
#include <cmath>
#include <filesystem>
#include <stdexcept>

namespace testsupport {

PopulationSeries make_population(const std::string& label, Quarter first, int n_quarters,
                                 const std::function<double(int, int)>& count_at) {
    std::vector<StratumValues> counts;
    counts.reserve(static_cast<std::size_t>(n_quarters));
    for (int i = 0; i < n_quarters; ++i) {
        StratumValues values{};
        for (int g = 0; g < kNumStrata; ++g) {
            values[static_cast<std::size_t>(g)] = count_at(i, g);
        }
        counts.push_back(values);
    }
    return PopulationSeries(label, first, std::move(counts));
}

DeathsSeries make_deaths(Month first, int n_months,
                         const std::function<std::int64_t(int, int)>& count_at) {
    std::vector<DeathValues> counts;
    counts.reserve(static_cast<std::size_t>(n_months));
    for (int i = 0; i < n_months; ++i) {
        DeathValues values{};
        for (int g = 0; g < kNumStrata; ++g) {
            values[static_cast<std::size_t>(g)] = count_at(i, g);
        }
        counts.push_back(values);
    }
    return DeathsSeries(first, std::move(counts));
}

PopulationSeries constant_population(const std::string& label, Quarter first, int n_quarters,
                                     const StratumValues& counts) {
    return make_population(label, first, n_quarters,
                           [&](int, int g) { return counts[static_cast<std::size_t>(g)]; });
}

MonthlyExposure uniform_exposure(const MonthRange& window, double py) {
    StratumValues values{};
    values.fill(py);
    return uniform_exposure(window, values);
}

MonthlyExposure uniform_exposure(const MonthRange& window, const StratumValues& py) {
    std::vector<StratumValues> person_years(static_cast<std::size_t>(window.count()), py);
    return MonthlyExposure(window.first, std::move(person_years));
}

const StratumValues& test_population_counts() {
    static const StratumValues counts = [] {
        const double by_band[kNumAgeBands] = {300000, 300000, 310000, 280000, 300000,
                                              280000,  220000, 140000, 65000,  14000};
        StratumValues v{};
        for (int band = 0; band < kNumAgeBands; ++band) {
            v[static_cast<std::size_t>(2 * band)] = by_band[band] * 0.51;     // F
            v[static_cast<std::size_t>(2 * band + 1)] = by_band[band] * 0.49; // M
        }
        return v;
    }();
    return counts;
}

const StratumValues& test_annual_rates() {
    static const StratumValues rates = [] {
        const double by_band[kNumAgeBands] = {0.0006, 0.0003, 0.0006, 0.0009, 0.0016,
                                              0.0042, 0.0095, 0.0250, 0.0800, 0.2100};
        StratumValues v{};
        for (int band = 0; band < kNumAgeBands; ++band) {
            v[static_cast<std::size_t>(2 * band)] = by_band[band] * 0.90;     // F
            v[static_cast<std::size_t>(2 * band + 1)] = by_band[band] * 1.12; // M
        }
        return v;
    }();
    return rates;
}

Eigen::VectorXd make_beta(const DesignInfo& info, const StratumValues& annual_rates,
                          double trend_per_year, const std::vector<double>& harmonic_coef) {
    if (info.spec.stratification != Stratification::AgeSex) {
        throw std::logic_error("make_beta expects an age_sex design layout");
    }
    const int p = info.num_columns();
    Eigen::VectorXd beta = Eigen::VectorXd::Zero(p);
    int col = 0;
    beta(col++) = std::log(annual_rates[0]);
    for (int g = 1; g < kNumStrata; ++g) {
        beta(col++) = std::log(annual_rates[static_cast<std::size_t>(g)] / annual_rates[0]);
    }
    beta(col++) = trend_per_year;
    for (int k = 0; k < 2 * info.spec.harmonics; ++k) {
        beta(col++) = k < static_cast<int>(harmonic_coef.size())
                          ? harmonic_coef[static_cast<std::size_t>(k)]
                          : 0.0;
    }
    return beta;
}

GlmTruth make_glm_truth(const ModelSpec& spec, int last_year, std::uint64_t seed,
                        double trend_per_year, const std::vector<double>& harmonic_coef) {
    const int first_year = spec.baseline.first;
    const int n_quarters = (last_year - first_year + 1) * 4;
    PopulationSeries population =
        constant_population("test", Quarter{first_year, 1}, n_quarters, test_population_counts());

    const MonthRange hull = MonthRange::years(first_year, last_year);
    MonthlyExposure exposure = monthly_exposure(population, hull);

    // Structural pass to fix the design layout (time center, column order).
    DeathsSeries zeros = make_deaths(hull.first, hull.count(), [](int, int) { return 0; });
    DesignInfo info = build_design(spec, zeros, exposure).info;

    Eigen::VectorXd beta = make_beta(info, test_annual_rates(), trend_per_year, harmonic_coef);

    DeathsSeries deaths = make_deaths(hull.first, hull.count(), [&](int i, int g) {
        const Month m = Month::from_index(hull.first.index() + i);
        const StratumKey stratum = StratumKey::from_index(g);
        const double py = exposure.person_years(m, stratum);
        const double mu = py * std::exp(design_row(info, m, stratum).dot(beta));
        PoissonSampler sampler(derive_seed(
            seed, static_cast<std::uint64_t>(m.index()) * kNumStrata + static_cast<std::uint64_t>(g)));
        return sampler(mu);
    });

    return GlmTruth{spec, std::move(population), std::move(exposure), std::move(info),
                    std::move(beta), std::move(deaths)};
}

double true_total(const GlmTruth& truth, const MonthRange& window) {
    double total = 0.0;
    for (const Month& m : window.months()) {
        for (const StratumKey& stratum : all_strata()) {
            const double py = truth.exposure.person_years(m, stratum);
            total += py * std::exp(design_row(truth.info, m, stratum).dot(truth.beta));
        }
    }
    return total;
}

ModelFit fit_truth(const GlmTruth& truth) {
    return fit_irls(build_design(truth.spec, truth.deaths, truth.exposure));
}

Line ols_line(const std::vector<double>& xs, const std::vector<double>& ys) {
    if (xs.size() != ys.size() || xs.size() < 2) {
        throw std::logic_error("ols_line needs matched inputs with at least two points");
    }
    const double n = static_cast<double>(xs.size());
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        sx += xs[i];
        sy += ys[i];
        sxx += xs[i] * xs[i];
        sxy += xs[i] * ys[i];
    }
    Line line;
    line.slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    line.intercept = (sy - line.slope * sx) / n;
    return line;
}

std::string fresh_temp_dir(const std::string& tag) {
    static std::atomic<int> counter{0};
    const auto dir = std::filesystem::temp_directory_path() /
                     ("exmort-test-" + tag + "-" + std::to_string(counter.fetch_add(1)));
    std::filesystem::remove_all(dir);
    std::filesystem::create_directories(dir);
    return dir.string();
}

} // namespace testsupport
