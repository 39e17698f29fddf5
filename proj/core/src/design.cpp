#include "exmort/design.hpp"

#include "exmort/errors.hpp"

#include <cmath>
#include <numbers>

namespace exmort {

const char* to_string(Stratification s) {
    return s == Stratification::AgeSex ? "age_sex" : "none";
}

Stratification parse_stratification(const std::string& token) {
    if (token == "age_sex") return Stratification::AgeSex;
    if (token == "none") return Stratification::None;
    throw Error(ErrorKind::InvalidSpec, "unknown stratification '" + token + "'");
}

void ModelSpec::validate() const {
    const int len = baseline.count();
    if (len < 4 || len > 10) {
        throw Error(ErrorKind::InvalidSpec,
                    "baseline " + baseline.str() + " spans " + std::to_string(len) +
                        " years, allowed range is 4..10");
    }
    if (harmonics < 0 || harmonics > 3) {
        throw Error(ErrorKind::InvalidSpec,
                    "harmonics must be in 0..3, got " + std::to_string(harmonics));
    }
}

namespace {

void fill_row(Eigen::RowVectorXd& row, const DesignInfo& info, const Month& month,
              const std::optional<StratumKey>& stratum) {
    const bool stratified = info.spec.stratification == Stratification::AgeSex;
    int col = 0;
    row(col++) = 1.0;
    if (stratified) {
        for (int g = 1; g < kNumStrata; ++g) {
            row(col++) = (stratum && stratum->index() == g) ? 1.0 : 0.0;
        }
    }
    row(col++) = (month.mid_day() - info.time_center_day) / kDaysPerYear;
    const double phase = (month.mon - 0.5) / 12.0;
    for (int k = 1; k <= info.spec.harmonics; ++k) {
        const double angle = 2.0 * std::numbers::pi * k * phase;
        row(col++) = std::sin(angle);
        row(col++) = std::cos(angle);
    }
}

} // namespace

Eigen::RowVectorXd design_row(const DesignInfo& info, const Month& month,
                              const std::optional<StratumKey>& stratum) {
    const bool stratified = info.spec.stratification == Stratification::AgeSex;
    if (stratified != stratum.has_value()) {
        throw Error(ErrorKind::StrataMismatch,
                    stratified ? "stratified design row needs a stratum"
                               : "aggregated design row takes no stratum");
    }
    Eigen::RowVectorXd row(info.num_columns());
    fill_row(row, info, month, stratum);
    return row;
}

DesignBundle build_design(const ModelSpec& spec, const DeathsSeries& deaths,
                          const MonthlyExposure& exposure) {
    spec.validate();
    const MonthRange window = spec.baseline_window();
    if (!deaths.covers(window) || !exposure.covers(window)) {
        throw Error(ErrorKind::EmptyBaseline,
                    "baseline window " + window.first.str() + ".." + window.last.str() +
                        " is not fully covered by deaths [" + deaths.first_month().str() + ".." +
                        deaths.last_month().str() + "] and exposure [" +
                        exposure.first_month().str() + ".." + exposure.last_month().str() + "]");
    }

    const bool stratified = spec.stratification == Stratification::AgeSex;
    const std::vector<Month> months = window.months();

    DesignInfo info;
    info.spec = spec;
    double center = 0.0;
    for (const Month& m : months) center += m.mid_day();
    info.time_center_day = center / static_cast<double>(months.size());

    info.column_labels.push_back("intercept");
    if (stratified) {
        info.reference_stratum = StratumKey::from_index(0).label();
        for (int g = 1; g < kNumStrata; ++g) {
            const StratumKey s = StratumKey::from_index(g);
            info.column_labels.push_back("stratum_" + age_band_token(s.band) + "_" +
                                         sex_token(s.sex));
        }
    }
    info.column_labels.push_back("trend_years");
    for (int k = 1; k <= spec.harmonics; ++k) {
        info.column_labels.push_back("sin" + std::to_string(k));
        info.column_labels.push_back("cos" + std::to_string(k));
    }

    const int p = info.num_columns();
    const int rows_per_month = stratified ? kNumStrata : 1;
    const int n = static_cast<int>(months.size()) * rows_per_month;

    DesignBundle bundle;
    bundle.info = info;
    bundle.y.resize(n);
    bundle.offset.resize(n);
    bundle.X.resize(n, p);
    bundle.rows.reserve(static_cast<std::size_t>(n));

    Eigen::RowVectorXd row(p);
    int r = 0;
    for (const Month& m : months) {
        const DeathValues& d = deaths.counts(m);
        const StratumValues& py = exposure.person_years(m);
        if (stratified) {
            for (int g = 0; g < kNumStrata; ++g) {
                const StratumKey s = StratumKey::from_index(g);
                fill_row(row, info, m, s);
                bundle.X.row(r) = row;
                bundle.y(r) = static_cast<double>(d[static_cast<std::size_t>(g)]);
                const double e = py[static_cast<std::size_t>(g)];
                if (!(e > 0.0)) {
                    throw Error(ErrorKind::ZeroExposure,
                                "person-years is not positive at " + m.str() + " stratum " +
                                    s.label());
                }
                bundle.offset(r) = std::log(e);
                bundle.rows.push_back(RowKey{m, s});
                ++r;
            }
        } else {
            fill_row(row, info, m, std::nullopt);
            bundle.X.row(r) = row;
            bundle.y(r) = static_cast<double>(deaths.month_total(m));
            const double e = exposure.month_total(m);
            if (!(e > 0.0)) {
                throw Error(ErrorKind::ZeroExposure,
                            "person-years is not positive at " + m.str());
            }
            bundle.offset(r) = std::log(e);
            bundle.rows.push_back(RowKey{m, std::nullopt});
            ++r;
        }
    }
    return bundle;
}

} // namespace exmort
