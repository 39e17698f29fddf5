#pragma once

#include "exmort/glm.hpp"
#include "exmort/series.hpp"

#include <Eigen/Dense>

#include <cstdint>
#include <string>
#include <vector>

namespace exmort {

/// Per-cell expected-death distribution over a projection window: the
/// plug-in mean exp(offset + x'beta) and a retained draw matrix combining
/// coefficient uncertainty with quasi-Poisson observation noise.
struct ExpectedDeaths {
    MonthRange window{{0, 1}, {0, 1}};
    std::vector<RowKey> cells; // month-major; one per stratum, or one per month when aggregated
    Eigen::VectorXd mean;      // cells
    Eigen::MatrixXd draws;     // cells x num_draws
    double dispersion = 1.0;
    std::uint64_t seed = 0;
    int num_draws = 0;
    std::vector<std::string> warnings;

    bool stratified() const { return !cells.empty() && cells.front().stratum.has_value(); }
};

/// Projects a fitted model over `window`. Draw b uses coefficients
/// beta + L z_b with L L' = covariance, plus observation noise with variance
/// dispersion * mu, truncated at zero. Each draw derives its own RNG stream
/// from (seed, draw index), so results are bit-identical for any thread
/// count. Fewer than 100 draws appends a warning (not an error).
/// Throws Error{WindowNotCovered} when exposure does not span the window.
ExpectedDeaths expected_deaths(const ModelFit& fit, const MonthlyExposure& exposure,
                               const MonthRange& window, int draws, std::uint64_t seed);

/// Restriction of an existing projection to a sub-window, reusing the same
/// draws so sliced aggregates stay consistent with the full ones.
ExpectedDeaths slice(const ExpectedDeaths& expected, const MonthRange& subwindow);

} // namespace exmort
