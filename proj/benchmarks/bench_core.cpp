// Microbenchmarks for the hot paths: the IRLS fit, the Monte Carlo
// projection, and the quarterly-to-monthly exposure bridge.

#include "exmort/design.hpp"
#include "exmort/expected.hpp"
#include "exmort/exposure.hpp"
#include "exmort/glm.hpp"
#include "exmort/synthetic.hpp"

#include <benchmark/benchmark.h>

namespace {

using namespace exmort;

struct BenchData {
    PopulationSeries population;
    DeathsSeries deaths;
    ModelSpec spec;
    MonthlyExposure exposure;
    DesignBundle bundle;
    ModelFit fit;
};

const BenchData& bench_data() {
    static const BenchData data = [] {
        SyntheticConfig cfg;
        cfg.first_year = 2010;
        cfg.last_year = 2023;
        cfg.seed = 11;
        PopulationSeries pop = synthetic_population(cfg, "bench");
        DeathsSeries deaths = synthetic_deaths(pop, cfg);
        ModelSpec spec;
        spec.baseline = {2014, 2019};
        MonthlyExposure exposure = monthly_exposure(pop, MonthRange::years(2014, 2023));
        DesignBundle bundle = build_design(spec, deaths, exposure);
        ModelFit fit = fit_irls(bundle);
        return BenchData{std::move(pop),      std::move(deaths), spec,
                         std::move(exposure), std::move(bundle), std::move(fit)};
    }();
    return data;
}

// Six baseline years x 12 months x 20 strata = 1440 rows, 25 columns.
void BM_FitIrls(benchmark::State& state) {
    const BenchData& data = bench_data();
    for (auto _ : state) {
        ModelFit fit = fit_irls(data.bundle);
        benchmark::DoNotOptimize(fit.beta);
    }
}
BENCHMARK(BM_FitIrls)->Unit(benchmark::kMillisecond);

void BM_BuildDesign(benchmark::State& state) {
    const BenchData& data = bench_data();
    for (auto _ : state) {
        DesignBundle bundle = build_design(data.spec, data.deaths, data.exposure);
        benchmark::DoNotOptimize(bundle.X);
    }
}
BENCHMARK(BM_BuildDesign)->Unit(benchmark::kMillisecond);

// 48 window months x 20 strata cells, draws swept as the argument.
void BM_ExpectedDraws(benchmark::State& state) {
    const BenchData& data = bench_data();
    const MonthRange window = MonthRange::years(2020, 2023);
    const int draws = static_cast<int>(state.range(0));
    for (auto _ : state) {
        ExpectedDeaths expected = expected_deaths(data.fit, data.exposure, window, draws, 1);
        benchmark::DoNotOptimize(expected.draws);
    }
    state.SetItemsProcessed(state.iterations() * draws);
}
BENCHMARK(BM_ExpectedDraws)->Arg(100)->Arg(1000)->Arg(10000)->Unit(benchmark::kMillisecond);

// 168 months x 20 strata of mid-month interpolation from quarterly anchors.
void BM_MonthlyExposure(benchmark::State& state) {
    const BenchData& data = bench_data();
    const MonthRange window = MonthRange::years(2010, 2023);
    for (auto _ : state) {
        MonthlyExposure exposure = monthly_exposure(data.population, window);
        benchmark::DoNotOptimize(exposure);
    }
}
BENCHMARK(BM_MonthlyExposure)->Unit(benchmark::kMillisecond);

} // namespace

BENCHMARK_MAIN();
