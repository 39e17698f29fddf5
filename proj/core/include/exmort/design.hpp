#pragma once

#include "exmort/model_spec.hpp"
#include "exmort/series.hpp"

#include <Eigen/Dense>

#include <optional>
#include <string>
#include <vector>

namespace exmort {

/// Identity of one design row: a month, and the stratum for stratified
/// models (empty for the aggregated stratification=none layout).
struct RowKey {
    Month month;
    std::optional<StratumKey> stratum;
};

/// Everything needed to rebuild a design row for any month, so fitted models
/// can be projected beyond the window they were fitted on.
struct DesignInfo {
    ModelSpec spec;
    double time_center_day = 0.0;          // trend is (mid_day - center)/365.25
    std::vector<std::string> column_labels; // in column order
    std::string reference_stratum;          // label of the absorbed stratum level

    int num_columns() const { return static_cast<int>(column_labels.size()); }
};

/// Response, offset and model matrix for one fitting window.
/// Rows are month-major: for age_sex stratification every month contributes
/// one row per stratum in stratum order; for none, one aggregated row.
struct DesignBundle {
    Eigen::VectorXd y;      // deaths
    Eigen::VectorXd offset; // log person-years
    Eigen::MatrixXd X;
    std::vector<RowKey> rows;
    DesignInfo info;
};

/// Design row for (month, stratum) under a fitted design's layout.
/// `stratum` must be empty iff the design is stratification=none.
Eigen::RowVectorXd design_row(const DesignInfo& info, const Month& month,
                              const std::optional<StratumKey>& stratum);

/// Columns, in order: intercept; one indicator per non-reference stratum
/// (age_sex only; reference is stratum 0 = 0-9|F); centered linear time in
/// years; sin/cos pairs at annual frequencies k = 1..harmonics. The time
/// center is the mean month midpoint of the baseline window, and the
/// seasonal phase of a month is (month - 0.5)/12 of a year.
DesignBundle build_design(const ModelSpec& spec, const DeathsSeries& deaths,
                          const MonthlyExposure& exposure);

} // namespace exmort
