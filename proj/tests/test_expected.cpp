#include "exmort/errors.hpp"
#include "exmort/expected.hpp"

#include "support.hpp"

#include <doctest.h>

#include <cmath>

using namespace exmort;
using namespace testsupport;

namespace {

// Aggregated flat model fitted on constant data: one death rate, no real
// trend. y = 4 per month on unit person-years for 2010-2017.
struct FlatModel {
    MonthlyExposure exposure; // 2010-01 .. 2018-12, total 1 py per month
    DeathsSeries deaths;      // 4 deaths per month through 2018
    ModelFit fit;             // stratification=none, harmonics=0
};

const FlatModel& flat_model() {
    static const FlatModel model = [] {
        ModelSpec spec;
        spec.stratification = Stratification::None;
        spec.harmonics = 0;
        spec.baseline = {2010, 2017};

        const MonthRange hull = MonthRange::years(2010, 2018);
        StratumValues py{};
        py.fill(1.0 / kNumStrata); // month totals to exactly 1 person-year
        MonthlyExposure exposure = uniform_exposure(hull, py);
        DeathsSeries deaths =
            make_deaths(hull.first, hull.count(), [](int, int g) { return g == 0 ? 4 : 0; });

        ModelFit fit = fit_irls(build_design(spec, deaths, exposure));
        return FlatModel{std::move(exposure), std::move(deaths), std::move(fit)};
    }();
    return model;
}

ModelFit degenerate(const ModelFit& fit) {
    ModelFit d = fit;
    d.covariance.setZero();
    d.dispersion = 0.0;
    return d;
}

} // namespace

TEST_SUITE("expected") {

TEST_CASE("constant data pins the intercept and zeroes the trend") {
    const ModelFit& fit = flat_model().fit;
    CHECK(fit.beta(0) == doctest::Approx(std::log(4.0)).epsilon(1e-10));
    CHECK(std::abs(fit.beta(1)) < 1e-10);
}

TEST_CASE("a projection with no uncertainty is the plug-in mean everywhere") {
    const FlatModel& model = flat_model();
    const MonthRange window{{2018, 1}, {2018, 10}}; // ten new months
    const ExpectedDeaths expected =
        expected_deaths(degenerate(model.fit), model.exposure, window, 200, 7);

    CHECK(expected.num_draws == 200);
    CHECK(expected.cells.size() == 10);
    CHECK_FALSE(expected.stratified());

    // Rate 4 per person-year on one person-year per month.
    for (int i = 0; i < expected.mean.size(); ++i) {
        CHECK(expected.mean(i) == doctest::Approx(4.0).epsilon(1e-10));
    }
    CHECK(expected.mean.sum() == doctest::Approx(40.0).epsilon(1e-10));

    // Every draw collapses onto the mean, so the interval has zero width.
    for (int i = 0; i < expected.draws.rows(); ++i) {
        const double lo = expected.draws.row(i).minCoeff();
        const double hi = expected.draws.row(i).maxCoeff();
        CHECK(lo == hi);
        CHECK(std::abs(lo - expected.mean(i)) < 1e-12 * (1.0 + expected.mean(i)));
    }
}

TEST_CASE("identical seeds give bit-identical projections") {
    const FlatModel& model = flat_model();
    const MonthRange window = MonthRange::years(2018, 2018);
    const ExpectedDeaths a = expected_deaths(model.fit, model.exposure, window, 500, 42);
    const ExpectedDeaths b = expected_deaths(model.fit, model.exposure, window, 500, 42);
    CHECK(a.mean == b.mean);
    CHECK(a.draws == b.draws);

    const ExpectedDeaths c = expected_deaths(model.fit, model.exposure, window, 500, 43);
    CHECK(a.draws != c.draws);
}

TEST_CASE("slicing a projection reuses the parent draws") {
    const FlatModel& model = flat_model();
    const MonthRange window = MonthRange::years(2018, 2018);
    const ExpectedDeaths full = expected_deaths(model.fit, model.exposure, window, 300, 5);
    const MonthRange half{{2018, 1}, {2018, 6}};
    const ExpectedDeaths part = slice(full, half);

    CHECK(part.cells.size() == 6);
    CHECK(part.num_draws == full.num_draws);
    for (std::size_t i = 0; i < part.cells.size(); ++i) {
        CHECK(part.cells[i].month == full.cells[i].month);
        CHECK(part.draws.row(static_cast<int>(i)) == full.draws.row(static_cast<int>(i)));
        CHECK(part.mean(static_cast<int>(i)) == full.mean(static_cast<int>(i)));
    }
    CHECK_THROWS_AS(slice(full, MonthRange::years(2019, 2019)), Error);
}

TEST_CASE("projection windows must be covered by the exposure") {
    const FlatModel& model = flat_model();
    CHECK_THROWS_AS(
        expected_deaths(model.fit, model.exposure, MonthRange::years(2019, 2019), 100, 1), Error);
    try {
        expected_deaths(model.fit, model.exposure, MonthRange::years(2019, 2019), 100, 1);
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::WindowNotCovered);
    }
}

TEST_CASE("draw-count rules: none below one, a warning below a hundred") {
    const FlatModel& model = flat_model();
    const MonthRange window = MonthRange::years(2018, 2018);
    CHECK_THROWS_AS(expected_deaths(model.fit, model.exposure, window, 0, 1), Error);

    const ExpectedDeaths few = expected_deaths(model.fit, model.exposure, window, 50, 1);
    REQUIRE_FALSE(few.warnings.empty());
    CHECK(few.warnings.front().find("50") != std::string::npos);

    const ExpectedDeaths enough = expected_deaths(model.fit, model.exposure, window, 100, 1);
    CHECK(enough.warnings.empty());
}

TEST_CASE("observation noise obeys the dispersion scaling") {
    const FlatModel& model = flat_model();
    // Zero out coefficient noise, keep observation noise with a known scale.
    ModelFit noisy = degenerate(model.fit);
    const double phi = 2.5;
    noisy.dispersion = phi;

    const MonthRange window{{2018, 1}, {2018, 4}};
    const ExpectedDeaths expected = expected_deaths(noisy, model.exposure, window, 20000, 31);

    for (int i = 0; i < expected.draws.rows(); ++i) {
        const double mu = expected.mean(i);
        const Eigen::VectorXd row = expected.draws.row(i).transpose();
        const double m = row.mean();
        const double var = (row.array() - m).square().sum() / (row.size() - 1);
        // Truncation at zero biases the variance down slightly (mu = 4,
        // sd = sqrt(10) leaves ~10% of mass below zero), so the window on
        // the variance ratio is generous but the scale must clearly be
        // phi * mu rather than mu.
        CHECK(var / (phi * mu) > 0.70);
        CHECK(var / (phi * mu) < 1.10);
        CHECK(row.minCoeff() >= 0.0);
    }
}

TEST_CASE("stratified projections carry per-stratum cells in layout order") {
    ModelSpec spec;
    spec.baseline = {2014, 2019};
    const GlmTruth truth = make_glm_truth(spec, 2021, 9);
    const ModelFit fit = fit_truth(truth);
    const MonthRange window = MonthRange::years(2020, 2020);
    const ExpectedDeaths expected = expected_deaths(fit, truth.exposure, window, 150, 3);

    CHECK(expected.stratified());
    CHECK(expected.cells.size() == 12u * 20u);
    CHECK(expected.cells[0].stratum == StratumKey::from_index(0));
    CHECK(expected.cells[19].stratum == StratumKey::from_index(19));
    CHECK(expected.cells[20].month == Month{2020, 2});

    // Plug-in means rebuild from the design layout by hand.
    for (int i : {0, 7, 100, 239}) {
        const RowKey& cell = expected.cells[static_cast<std::size_t>(i)];
        const double py = truth.exposure.person_years(cell.month, *cell.stratum);
        const double mu =
            py * std::exp(design_row(fit.info, cell.month, cell.stratum).dot(fit.beta));
        CHECK(expected.mean(i) == doctest::Approx(mu).epsilon(1e-12));
    }
}

} // TEST_SUITE
