#pragma once

#include "exmort/design.hpp"
#include "exmort/exposure.hpp"
#include "exmort/glm.hpp"
#include "exmort/series.hpp"

#include <Eigen/Dense>

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace testsupport {

using namespace exmort;

// Per-stratum builders; fn(period_index, stratum_index) -> value.
PopulationSeries make_population(const std::string& label, Quarter first, int n_quarters,
                                 const std::function<double(int, int)>& count_at);
DeathsSeries make_deaths(Month first, int n_months,
                         const std::function<std::int64_t(int, int)>& count_at);

// Every quarter identical: stratum g holds counts[g].
PopulationSeries constant_population(const std::string& label, Quarter first, int n_quarters,
                                     const StratumValues& counts);

// Every month: person-years `py` in every stratum (built directly, no
// interpolation involved).
MonthlyExposure uniform_exposure(const MonthRange& window, double py);
// Same, but per-stratum values.
MonthlyExposure uniform_exposure(const MonthRange& window, const StratumValues& py);

// Mid-sized population with a plausible age pyramid, constant over time so
// person-years are known in closed form (count * days / 365.25).
const StratumValues& test_population_counts();
// Annual deaths per person-year by stratum, spanning three orders of
// magnitude like real all-cause mortality.
const StratumValues& test_annual_rates();

// A dataset that is exactly model-true: deaths are Poisson draws around
// exp(log person-years + x'beta) with x built by the production design-row
// code, so a fit should recover `beta` up to sampling noise.
struct GlmTruth {
    ModelSpec spec;
    PopulationSeries population;
    MonthlyExposure exposure; // hull: baseline start .. last_year end
    DesignInfo info;          // layout the fit will use (same time center)
    Eigen::VectorXd beta;
    DeathsSeries deaths;      // spans the full exposure window
};

// Coefficients in design order for an age_sex layout: intercept =
// log rate of the reference stratum, indicators = log rate ratios, then the
// trend slope (per year) and sin/cos pairs.
Eigen::VectorXd make_beta(const DesignInfo& info, const StratumValues& annual_rates,
                          double trend_per_year, const std::vector<double>& harmonic_coef);

GlmTruth make_glm_truth(const ModelSpec& spec, int last_year, std::uint64_t seed,
                        double trend_per_year = -0.010,
                        const std::vector<double>& harmonic_coef = {0.08, 0.02, -0.012, 0.006});

// Sum of the true cell means exp(offset + x'beta) over `window`.
double true_total(const GlmTruth& truth, const MonthRange& window);

// Fit of the truth's baseline via the production pipeline pieces.
ModelFit fit_truth(const GlmTruth& truth);

// Plain-arithmetic least squares line through (xs, ys), computed from raw
// cross products -- deliberately a different algorithm from the library's
// centered solver, so it can serve as an independent check.
struct Line {
    double slope = 0.0;
    double intercept = 0.0;
};
Line ols_line(const std::vector<double>& xs, const std::vector<double>& ys);

// Directory that is writable for temp files, unique per call.
std::string fresh_temp_dir(const std::string& tag);

} // namespace testsupport
