#include "exmort/report.hpp"

#include "exmort/errors.hpp"
#include "exmort/rng.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace exmort {

Aggregation parse_aggregation(const std::string& token) {
    if (token == "total") return Aggregation::Total;
    if (token == "year") return Aggregation::Year;
    if (token == "month") return Aggregation::Month;
    if (token == "age_band") return Aggregation::AgeBand;
    if (token == "sex") return Aggregation::Sex;
    throw Error(ErrorKind::ConfigError, "unknown aggregation '" + token + "'");
}

std::string to_string(Aggregation agg) {
    switch (agg) {
        case Aggregation::Total: return "total";
        case Aggregation::Year: return "year";
        case Aggregation::Month: return "month";
        case Aggregation::AgeBand: return "age_band";
        case Aggregation::Sex: return "sex";
    }
    return "total";
}

namespace {

double ratio_pct(double actual, double expected) {
    if (expected <= 0.0)
        return actual > 0.0 ? std::numeric_limits<double>::infinity() : 0.0;
    return 100.0 * (actual - expected) / expected;
}

struct Grouping {
    std::vector<std::string> keys;  // canonical order
    std::vector<int> cell_group;    // cell index -> group index
};

Grouping make_grouping(const ExpectedDeaths& expected, Aggregation agg) {
    const bool strat = expected.stratified();
    if ((agg == Aggregation::AgeBand || agg == Aggregation::Sex) && !strat)
        throw Error(ErrorKind::AggregationMismatch,
                    to_string(agg) + " report requires per-stratum projections, but the model "
                                     "was fitted without stratification");

    Grouping g;
    g.cell_group.reserve(expected.cells.size());
    const MonthRange& w = expected.window;

    switch (agg) {
        case Aggregation::Total:
            g.keys = {"total"};
            for (std::size_t c = 0; c < expected.cells.size(); ++c) g.cell_group.push_back(0);
            break;
        case Aggregation::Year:
            for (int y = w.first.year; y <= w.last.year; ++y) g.keys.push_back(std::to_string(y));
            for (const RowKey& cell : expected.cells)
                g.cell_group.push_back(cell.month.year - w.first.year);
            break;
        case Aggregation::Month:
            for (const Month& m : w.months()) g.keys.push_back(m.str());
            for (const RowKey& cell : expected.cells)
                g.cell_group.push_back(cell.month.index() - w.first.index());
            break;
        case Aggregation::AgeBand:
            for (int b = 0; b < kNumAgeBands; ++b)
                g.keys.push_back(age_band_token(static_cast<AgeBand>(b)));
            for (const RowKey& cell : expected.cells)
                g.cell_group.push_back(static_cast<int>(cell.stratum->band));
            break;
        case Aggregation::Sex:
            g.keys = {sex_token(Sex::Female), sex_token(Sex::Male)};
            for (const RowKey& cell : expected.cells)
                g.cell_group.push_back(static_cast<int>(cell.stratum->sex));
            break;
    }
    return g;
}

// Observed deaths aggregated to the same groups as the expected cells.
std::vector<double> group_actuals(const DeathsSeries& actual, const ExpectedDeaths& expected,
                                  const Grouping& g) {
    std::vector<double> out(g.keys.size(), 0.0);
    if (expected.stratified()) {
        for (std::size_t c = 0; c < expected.cells.size(); ++c) {
            const RowKey& cell = expected.cells[c];
            out[static_cast<std::size_t>(g.cell_group[c])] +=
                static_cast<double>(actual.count(cell.month, *cell.stratum));
        }
    } else {
        for (std::size_t c = 0; c < expected.cells.size(); ++c) {
            out[static_cast<std::size_t>(g.cell_group[c])] +=
                static_cast<double>(actual.month_total(expected.cells[c].month));
        }
    }
    return out;
}

} // namespace

ExcessReport excess_report(const DeathsSeries& actual, const ExpectedDeaths& expected,
                           Aggregation agg) {
    if (!actual.covers(expected.window))
        throw Error(ErrorKind::WindowNotCovered,
                    "deaths span " +
                        MonthRange{actual.first_month(), actual.last_month()}.str() +
                        " but the report window is " + expected.window.str());

    const Grouping g = make_grouping(expected, agg);
    const int n_groups = static_cast<int>(g.keys.size());
    const int n_draws = expected.num_draws;

    const std::vector<double> actuals = group_actuals(actual, expected, g);

    Eigen::VectorXd mean_sum = Eigen::VectorXd::Zero(n_groups);
    Eigen::MatrixXd draw_sum = Eigen::MatrixXd::Zero(n_groups, n_draws);
    for (std::size_t c = 0; c < expected.cells.size(); ++c) {
        const int grp = g.cell_group[c];
        mean_sum(grp) += expected.mean(static_cast<Eigen::Index>(c));
        draw_sum.row(grp) += expected.draws.row(static_cast<Eigen::Index>(c));
    }

    ExcessReport report;
    report.aggregation = agg;
    report.window = expected.window;
    report.seed = expected.seed;
    report.num_draws = n_draws;
    report.warnings = expected.warnings;
    report.rows.reserve(static_cast<std::size_t>(n_groups));

    std::vector<double> buf(static_cast<std::size_t>(n_draws));
    for (int grp = 0; grp < n_groups; ++grp) {
        ExcessRow row;
        row.key = g.keys[static_cast<std::size_t>(grp)];
        row.actual = actuals[static_cast<std::size_t>(grp)];
        row.expected_mean = mean_sum(grp);

        for (int b = 0; b < n_draws; ++b) buf[static_cast<std::size_t>(b)] = draw_sum(grp, b);
        std::sort(buf.begin(), buf.end());
        row.expected_lo = quantile_sorted(buf, 0.025);
        row.expected_hi = quantile_sorted(buf, 0.975);

        row.excess = row.actual - row.expected_mean;
        row.excess_lo = row.actual - row.expected_hi;
        row.excess_hi = row.actual - row.expected_lo;
        row.excess_pct = ratio_pct(row.actual, row.expected_mean);

        for (int b = 0; b < n_draws; ++b)
            buf[static_cast<std::size_t>(b)] = ratio_pct(row.actual, draw_sum(grp, b));
        std::sort(buf.begin(), buf.end());
        row.excess_pct_lo = quantile_sorted(buf, 0.025);
        row.excess_pct_hi = quantile_sorted(buf, 0.975);

        report.rows.push_back(std::move(row));
    }
    return report;
}

std::vector<CovidComparisonRow> covid_comparison(const ExcessReport& report,
                                                 const CovidDeathsSeries& covid, Aggregation agg) {
    if (agg != report.aggregation)
        throw Error(ErrorKind::AggregationMismatch,
                    "report is aggregated by " + to_string(report.aggregation) +
                        " but the join requested " + to_string(agg));

    const bool needs_total =
        agg == Aggregation::Total || agg == Aggregation::Year || agg == Aggregation::Month;
    if (needs_total && !covid.provides_total())
        throw Error(ErrorKind::GranularityUnavailable,
                    "covid deaths source provides no monthly totals");
    if (agg == Aggregation::AgeBand && !covid.provides_age())
        throw Error(ErrorKind::GranularityUnavailable,
                    "covid deaths source has no age breakdown");
    if (agg == Aggregation::Sex && !covid.provides_sex())
        throw Error(ErrorKind::GranularityUnavailable,
                    "covid deaths source has no sex breakdown");

    // Accumulate per-key covid counts over the window; months the source
    // does not carry contribute nothing, and a key with no months at all
    // stays absent.
    std::vector<std::optional<std::int64_t>> counts(report.rows.size());
    auto add = [&](std::size_t idx, std::int64_t v) {
        if (!counts[idx]) counts[idx] = 0;
        *counts[idx] += v;
    };

    for (const Month& m : report.window.months()) {
        switch (agg) {
            case Aggregation::Total:
                if (auto t = covid.month_total(m)) add(0, *t);
                break;
            case Aggregation::Year:
                if (auto t = covid.month_total(m))
                    add(static_cast<std::size_t>(m.year - report.window.first.year), *t);
                break;
            case Aggregation::Month:
                if (auto t = covid.month_total(m))
                    add(static_cast<std::size_t>(m.index() - report.window.first.index()), *t);
                break;
            case Aggregation::AgeBand:
                if (auto by_age = covid.month_by_age(m)) {
                    for (int b = 0; b < kNumAgeBands; ++b)
                        add(static_cast<std::size_t>(b), (*by_age)[static_cast<std::size_t>(b)]);
                }
                break;
            case Aggregation::Sex:
                if (auto by_sex = covid.month_by_sex(m)) {
                    for (int s = 0; s < kNumSexes; ++s)
                        add(static_cast<std::size_t>(s), (*by_sex)[static_cast<std::size_t>(s)]);
                }
                break;
        }
    }

    std::vector<CovidComparisonRow> out;
    out.reserve(report.rows.size());
    for (std::size_t i = 0; i < report.rows.size(); ++i) {
        const ExcessRow& r = report.rows[i];
        out.push_back(CovidComparisonRow{r.key, counts[i], r.excess, r.excess_lo, r.excess_hi});
    }
    return out;
}

std::vector<FittedMonthRow> monthly_fitted(const ExpectedDeaths& expected,
                                           const DeathsSeries& actual) {
    ExcessReport by_month = excess_report(actual, expected, Aggregation::Month);
    std::vector<FittedMonthRow> out;
    out.reserve(by_month.rows.size());
    for (const ExcessRow& r : by_month.rows) {
        FittedMonthRow row;
        row.month = Month::parse(r.key);
        row.actual = static_cast<std::int64_t>(std::llround(r.actual));
        row.fitted_mean = r.expected_mean;
        row.lo95 = r.expected_lo;
        row.hi95 = r.expected_hi;
        out.push_back(row);
    }
    return out;
}

} // namespace exmort
