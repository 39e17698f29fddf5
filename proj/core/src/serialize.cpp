#include "exmort/serialize.hpp"

#include "exmort/csv_io.hpp"

#include <cstdio>
#include <ostream>

namespace exmort {

namespace {

std::string fixed2(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.2f", v);
    return buf;
}

} // namespace

std::string provenance_line(const Provenance& p) {
    return "# exmort " + p.tool_version + " seed=" + std::to_string(p.seed) +
           " draws=" + std::to_string(p.draws) + " config=" + p.config_hash;
}

nlohmann::json provenance_json(const Provenance& p) {
    return nlohmann::json{{"tool_version", p.tool_version},
                          {"seed", p.seed},
                          {"draws", p.draws},
                          {"config", p.config_hash}};
}

void write_report_csv(std::ostream& os, const ExcessReport& report) {
    os << "key,actual,expected_mean,expected_lo,expected_hi,excess,excess_lo,excess_hi,"
          "excess_pct,excess_pct_lo,excess_pct_hi\n";
    for (const ExcessRow& r : report.rows) {
        os << r.key << ',' << format_double(r.actual) << ',' << format_double(r.expected_mean)
           << ',' << format_double(r.expected_lo) << ',' << format_double(r.expected_hi) << ','
           << format_double(r.excess) << ',' << format_double(r.excess_lo) << ','
           << format_double(r.excess_hi) << ',' << format_double(r.excess_pct) << ','
           << format_double(r.excess_pct_lo) << ',' << format_double(r.excess_pct_hi) << '\n';
    }
}

nlohmann::json report_to_json(const ExcessReport& report) {
    nlohmann::json rows = nlohmann::json::array();
    for (const ExcessRow& r : report.rows) {
        rows.push_back({{"key", r.key},
                        {"actual", r.actual},
                        {"expected_mean", r.expected_mean},
                        {"expected_lo", r.expected_lo},
                        {"expected_hi", r.expected_hi},
                        {"excess", r.excess},
                        {"excess_lo", r.excess_lo},
                        {"excess_hi", r.excess_hi},
                        {"excess_pct", r.excess_pct},
                        {"excess_pct_lo", r.excess_pct_lo},
                        {"excess_pct_hi", r.excess_pct_hi}});
    }
    nlohmann::json out{{"aggregation", to_string(report.aggregation)},
                       {"window", report.window.str()},
                       {"seed", report.seed},
                       {"draws", report.num_draws},
                       {"rows", rows}};
    if (!report.warnings.empty()) out["warnings"] = report.warnings;
    return out;
}

void write_sweep_csv(std::ostream& os, const SweepTable& table, YearRange window) {
    os << "baseline,qpr_mean,qpr_lo,qpr_hi,smrlr\n";
    for (const SweepRow& row : table.rows) {
        if (row.window != window) continue;
        os << row.baseline.str() << ',';
        if (row.ok) {
            os << format_double(row.qpr_mean) << ',' << format_double(row.qpr_lo) << ','
               << format_double(row.qpr_hi) << ',' << format_double(row.smrlr) << '\n';
        } else {
            os << "error,error,error," << '"' << row.error << '"' << '\n';
        }
    }
}

nlohmann::json sweep_to_json(const SweepTable& table) {
    nlohmann::json rows = nlohmann::json::array();
    for (const SweepRow& row : table.rows) {
        nlohmann::json j{{"baseline", row.baseline.str()}, {"window", row.window.str()}};
        if (row.ok) {
            j["qpr_mean"] = row.qpr_mean;
            j["qpr_lo"] = row.qpr_lo;
            j["qpr_hi"] = row.qpr_hi;
            j["smrlr"] = row.smrlr;
        } else {
            j["error"] = row.error;
        }
        rows.push_back(std::move(j));
    }
    return nlohmann::json{{"baseline_end", table.baseline_end}, {"rows", rows}};
}

void write_rates_csv(std::ostream& os, const StandardizedRateSeries& rates) {
    os << "year,rate_per_1000\n";
    for (int y = rates.first_year; y <= rates.last_year(); ++y)
        os << y << ',' << fixed2(rates.rate(y)) << '\n';
}

void write_smr_lr_csv(std::ostream& os, const SmrLrExcess& excess) {
    os << "year,actual_deaths,expected_deaths,excess\n";
    for (const SmrLrExcessRow& r : excess.rows)
        os << r.year << ',' << r.actual << ',' << format_double(r.expected) << ','
           << format_double(r.excess) << '\n';
}

nlohmann::json smr_lr_to_json(const SmrLrFit& fit, const SmrLrExcess& excess) {
    nlohmann::json rows = nlohmann::json::array();
    for (const SmrLrExcessRow& r : excess.rows)
        rows.push_back({{"year", r.year},
                        {"actual_deaths", r.actual},
                        {"expected_deaths", r.expected},
                        {"excess", r.excess}});
    return nlohmann::json{{"slope_per_1000_per_year", fit.slope},
                          {"intercept_per_1000", fit.intercept},
                          {"baseline", fit.baseline.str()},
                          {"rows", rows},
                          {"cumulative_excess", excess.cumulative}};
}

void write_rebase_csv(std::ostream& os, const RebaseDiff& diff) {
    os << "quarter,age_band,old,new,abs_diff,rel_diff_pct\n";
    for (const RebaseRow& r : diff.rows) {
        os << r.quarter.str() << ',' << r.age_band << ',' << format_double(r.old_count) << ','
           << format_double(r.new_count) << ',' << format_double(r.abs_diff) << ',';
        if (r.rel_defined)
            os << format_double(r.rel_diff_pct) << '\n';
        else
            os << "undefined\n";
    }
}

void write_sensitivity_csv(std::ostream& os, const SensitivityResult& result) {
    os << "vintage,key,actual,expected_mean,expected_lo,expected_hi,excess,excess_lo,excess_hi,"
          "excess_pct,excess_pct_lo,excess_pct_hi\n";
    auto row = [&os](const std::string& vintage, const ExcessRow& r) {
        os << vintage << ',' << r.key << ',' << format_double(r.actual) << ','
           << format_double(r.expected_mean) << ',' << format_double(r.expected_lo) << ','
           << format_double(r.expected_hi) << ',' << format_double(r.excess) << ','
           << format_double(r.excess_lo) << ',' << format_double(r.excess_hi) << ','
           << format_double(r.excess_pct) << ',' << format_double(r.excess_pct_lo) << ','
           << format_double(r.excess_pct_hi) << '\n';
    };
    row("old", result.old_report.rows.front());
    row("new", result.new_report.rows.front());
    os << "delta,total,,,,," << format_double(result.delta_excess) << ",,,"
       << format_double(result.delta_excess_pct) << ",,\n";
}

void write_fitted_csv(std::ostream& os, const std::vector<FittedMonthRow>& rows) {
    os << "month,actual,fitted_mean,lo95,hi95\n";
    for (const FittedMonthRow& r : rows)
        os << r.month.str() << ',' << r.actual << ',' << format_double(r.fitted_mean) << ','
           << format_double(r.lo95) << ',' << format_double(r.hi95) << '\n';
}

void write_covid_csv(std::ostream& os, const std::vector<CovidComparisonRow>& rows) {
    os << "key,covid_deaths,excess,excess_lo,excess_hi\n";
    for (const CovidComparisonRow& r : rows) {
        os << r.key << ',';
        if (r.covid) os << *r.covid;
        os << ',' << format_double(r.excess) << ',' << format_double(r.excess_lo) << ','
           << format_double(r.excess_hi) << '\n';
    }
}

nlohmann::json fit_to_json(const ModelFit& fit) {
    nlohmann::json coef = nlohmann::json::object();
    for (int j = 0; j < fit.info.num_columns(); ++j)
        coef[fit.info.column_labels[static_cast<std::size_t>(j)]] = fit.beta(j);

    nlohmann::json cov = nlohmann::json::array();
    for (Eigen::Index i = 0; i < fit.covariance.rows(); ++i) {
        nlohmann::json row = nlohmann::json::array();
        for (Eigen::Index j = 0; j < fit.covariance.cols(); ++j)
            row.push_back(fit.covariance(i, j));
        cov.push_back(std::move(row));
    }

    return nlohmann::json{
        {"stratification", to_string(fit.info.spec.stratification)},
        {"harmonics", fit.info.spec.harmonics},
        {"baseline", fit.info.spec.baseline.str()},
        {"time_center_day", fit.info.time_center_day},
        {"reference_stratum", fit.info.reference_stratum},
        {"coefficients", coef},
        {"covariance", cov},
        {"dispersion", fit.dispersion},
        {"dispersion_raw", fit.dispersion_raw},
        {"iterations", fit.diagnostics.iterations},
        {"converged", fit.diagnostics.converged},
        {"deviance", fit.diagnostics.deviance_history.empty()
                         ? nlohmann::json()
                         : nlohmann::json(fit.diagnostics.deviance_history.back())}};
}

} // namespace exmort
