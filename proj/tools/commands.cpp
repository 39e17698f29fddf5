#include "commands.hpp"

#include "exmort/csv_io.hpp"
#include "exmort/errors.hpp"
#include "exmort/pipeline.hpp"
#include "exmort/serialize.hpp"
#include "exmort/standardize.hpp"
#include "exmort/sweep.hpp"
#include "exmort/version.hpp"

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

namespace exmort {

namespace fs = std::filesystem;

namespace {

Provenance provenance_of(const RunConfig& config) {
    return Provenance{kVersion, config.seed, config.draws, config.hash()};
}

fs::path out_file(const RunConfig& config, const std::string& name) {
    fs::create_directories(config.out_dir);
    return fs::path(config.out_dir) / name;
}

void write_file(const fs::path& path, const std::string& body) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorKind::IoError, "cannot write '" + path.string() + "'");
    out << body;
    if (!out) throw Error(ErrorKind::IoError, "failed writing '" + path.string() + "'");
}

template <typename WriteBody>
void write_csv(const RunConfig& config, const std::string& name, WriteBody&& body) {
    std::ostringstream os;
    os << provenance_line(provenance_of(config)) << '\n';
    body(os);
    write_file(out_file(config, name), os.str());
}

void write_json(const RunConfig& config, const std::string& name, nlohmann::json payload) {
    payload["provenance"] = provenance_json(provenance_of(config));
    write_file(out_file(config, name), payload.dump(2) + "\n");
}

std::string stem_of(const std::string& path) { return fs::path(path).stem().string(); }

std::string fixed2(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.2f", v);
    return buf;
}

/// Shared fit stage: ingest, bridge exposure over the baseline+window hull,
/// build the design and run IRLS.
struct FitStage {
    DeathsSeries deaths;
    PopulationSeries population;
    MonthlyExposure exposure;
    ModelFit fit;
};

FitStage run_fit_stage(const RunConfig& config) {
    config.spec.validate();
    DeathsSeries deaths = ingest_deaths(config.deaths_path);
    PopulationSeries population =
        ingest_population(config.population_path, stem_of(config.population_path));

    YearRange span = config.window();
    for (const YearRange& w : config.windows) {
        span.first = std::min(span.first, w.first);
        span.last = std::max(span.last, w.last);
    }
    const MonthRange hull = analysis_hull(config.spec, span);
    MonthlyExposure exposure = monthly_exposure(population, hull);
    const DesignBundle design = build_design(config.spec, deaths, exposure);
    ModelFit fit = fit_irls(design);
    return FitStage{std::move(deaths), std::move(population), std::move(exposure),
                    std::move(fit)};
}

} // namespace

void cmd_fit(const RunConfig& config) {
    config.require_inputs(false, false);
    FitStage stage = run_fit_stage(config);

    const MonthRange hull = analysis_hull(config.spec, config.window());
    const ExpectedDeaths over_hull =
        expected_deaths(stage.fit, stage.exposure, hull, config.draws, config.seed);
    const std::vector<FittedMonthRow> rows = monthly_fitted(over_hull, stage.deaths);

    write_json(config, "fit.json", nlohmann::json{{"fit", fit_to_json(stage.fit)}});
    write_csv(config, "fig_s3.csv", [&](std::ostream& os) { write_fitted_csv(os, rows); });
}

void cmd_excess(const RunConfig& config) {
    config.require_inputs(false, false);
    FitStage stage = run_fit_stage(config);

    const MonthRange window = MonthRange::years(config.window().first, config.window().last);
    const ExpectedDeaths expected =
        expected_deaths(stage.fit, stage.exposure, window, config.draws, config.seed);

    for (const std::string& token : config.aggregations) {
        const Aggregation agg = parse_aggregation(token);
        const ExcessReport report = excess_report(stage.deaths, expected, agg);
        if (config.format == "json") {
            write_json(config, "excess_" + token + ".json", report_to_json(report));
        } else {
            write_csv(config, "excess_" + token + ".csv",
                      [&](std::ostream& os) { write_report_csv(os, report); });
        }
    }

    if (config.covid_path.empty()) return;
    const CovidDeathsSeries covid = ingest_covid_deaths(config.covid_path);

    if (covid.provides_total()) {
        const ExcessReport by_year = excess_report(stage.deaths, expected, Aggregation::Year);
        const auto year_rows = covid_comparison(by_year, covid, Aggregation::Year);
        write_csv(config, "fig_s5a.csv",
                  [&](std::ostream& os) { write_covid_csv(os, year_rows); });

        const ExcessReport by_month = excess_report(stage.deaths, expected, Aggregation::Month);
        const auto month_rows = covid_comparison(by_month, covid, Aggregation::Month);
        write_csv(config, "fig_s5b.csv",
                  [&](std::ostream& os) { write_covid_csv(os, month_rows); });
    } else {
        std::cerr << "note: covid file has no monthly totals; skipping fig_s5a/fig_s5b\n";
    }

    // Age/sex breakdown for the last two window years.
    if (config.spec.stratification != Stratification::AgeSex) {
        std::cerr << "note: model is not stratified; skipping fig_s6\n";
        return;
    }
    std::vector<int> years;
    if (config.window().count() >= 2) years.push_back(config.window().last - 1);
    years.push_back(config.window().last);

    std::ostringstream s6;
    s6 << "year,dimension,key,covid_deaths,excess,excess_lo,excess_hi\n";
    bool any = false;
    for (int y : years) {
        const ExpectedDeaths year_slice = slice(expected, MonthRange::years(y, y));
        for (Aggregation agg : {Aggregation::AgeBand, Aggregation::Sex}) {
            if (agg == Aggregation::AgeBand && !covid.provides_age()) continue;
            if (agg == Aggregation::Sex && !covid.provides_sex()) continue;
            const ExcessReport rep = excess_report(stage.deaths, year_slice, agg);
            for (const CovidComparisonRow& r : covid_comparison(rep, covid, agg)) {
                s6 << y << ',' << to_string(agg) << ',' << r.key << ',';
                if (r.covid) s6 << *r.covid;
                s6 << ',' << format_double(r.excess) << ',' << format_double(r.excess_lo) << ','
                   << format_double(r.excess_hi) << '\n';
                any = true;
            }
        }
    }
    if (any) {
        std::ostringstream os;
        os << provenance_line(provenance_of(config)) << '\n' << s6.str();
        write_file(out_file(config, "fig_s6.csv"), os.str());
    } else {
        std::cerr << "note: covid file has neither age nor sex breakdown; skipping fig_s6\n";
    }
}

void cmd_sweep(const RunConfig& config) {
    config.require_inputs(false, false);
    config.spec.validate();
    const DeathsSeries deaths = ingest_deaths(config.deaths_path);
    const PopulationSeries population =
        ingest_population(config.population_path, stem_of(config.population_path));

    const SweepTable table =
        baseline_sweep(config.spec, deaths, population, config.windows, config.sweep_shortest,
                       config.sweep_longest, config.draws, config.seed, config.standard_quarter);

    if (config.format == "json") {
        write_json(config, "sweep.json", sweep_to_json(table));
        return;
    }
    for (const YearRange& window : config.windows) {
        const std::string name =
            "sweep_" + std::to_string(window.first) + "_" + std::to_string(window.last) + ".csv";
        write_csv(config, name, [&](std::ostream& os) { write_sweep_csv(os, table, window); });
    }
}

void cmd_standardize(const RunConfig& config) {
    config.require_inputs(false, false);
    config.spec.validate();
    const DeathsSeries deaths = ingest_deaths(config.deaths_path);
    const PopulationSeries population =
        ingest_population(config.population_path, stem_of(config.population_path));

    const YearRange span{std::min(config.spec.baseline.first, config.window().first),
                         std::max(config.spec.baseline.last, config.window().last)};
    const MonthlyExposure exposure =
        monthly_exposure(population, MonthRange::years(span.first, span.last));
    const StandardWeights weights = standard_weights(population, config.standard_quarter);

    std::vector<std::string> warnings;
    const StandardizedRateSeries rates =
        standardized_rate_series(deaths, exposure, weights, span, &warnings);
    for (const std::string& w : warnings) std::cerr << "note: " << w << '\n';

    const SmrLrFit smr = fit_smr_lr(rates, config.spec.baseline);
    const SmrLrExcess excess = smr_lr_excess(smr, rates, deaths, config.window());

    if (config.format == "json") {
        nlohmann::json rate_rows = nlohmann::json::array();
        for (int y = rates.first_year; y <= rates.last_year(); ++y)
            rate_rows.push_back({{"year", y}, {"rate_per_1000", rates.rate(y)}});
        write_json(config, "rates.json", nlohmann::json{{"rows", rate_rows}});
        write_json(config, "smr_lr.json", smr_lr_to_json(smr, excess));
    } else {
        write_csv(config, "rates.csv", [&](std::ostream& os) { write_rates_csv(os, rates); });
        write_csv(config, "smr_lr.csv",
                  [&](std::ostream& os) { write_smr_lr_csv(os, excess); });
    }

    write_csv(config, "fig_s4.csv", [&](std::ostream& os) {
        os << "year,rate_per_1000,smr_lr_line\n";
        for (int y = rates.first_year; y <= rates.last_year(); ++y)
            os << y << ',' << fixed2(rates.rate(y)) << ',' << fixed2(smr.predicted(y)) << '\n';
    });
}

void cmd_rebase_diff(const RunConfig& config) {
    config.require_inputs(true, false);
    config.spec.validate();
    const DeathsSeries deaths = ingest_deaths(config.deaths_path);
    const PopulationSeries old_pop =
        ingest_population(config.population_old_path, stem_of(config.population_old_path));
    const PopulationSeries new_pop =
        ingest_population(config.population_path, stem_of(config.population_path));

    const RebaseDiff diff = rebase_diff(old_pop, new_pop);
    const SensitivityResult sens = excess_sensitivity(deaths, old_pop, new_pop, config.spec,
                                                      config.window(), config.draws, config.seed);

    if (config.format == "json") {
        nlohmann::json rows = nlohmann::json::array();
        for (const RebaseRow& r : diff.rows) {
            nlohmann::json j{{"quarter", r.quarter.str()},
                             {"age_band", r.age_band},
                             {"old", r.old_count},
                             {"new", r.new_count},
                             {"abs_diff", r.abs_diff}};
            if (r.rel_defined)
                j["rel_diff_pct"] = r.rel_diff_pct;
            else
                j["rel_diff_pct"] = nullptr;
            rows.push_back(std::move(j));
        }
        write_json(config, "rebase_diff.json",
                   nlohmann::json{{"old", diff.old_label}, {"new", diff.new_label},
                                  {"rows", rows}});
        write_json(config, "excess_sensitivity.json",
                   nlohmann::json{{"old", report_to_json(sens.old_report)},
                                  {"new", report_to_json(sens.new_report)},
                                  {"delta_excess", sens.delta_excess},
                                  {"delta_excess_pct", sens.delta_excess_pct}});
    } else {
        write_csv(config, "rebase_diff.csv",
                  [&](std::ostream& os) { write_rebase_csv(os, diff); });
        write_csv(config, "excess_sensitivity.csv",
                  [&](std::ostream& os) { write_sensitivity_csv(os, sens); });
    }
}

void cmd_figures(const RunConfig& config) {
    cmd_fit(config);
    cmd_excess(config);
    cmd_standardize(config);
    if (!config.population_old_path.empty()) cmd_rebase_diff(config);
}

} // namespace exmort
