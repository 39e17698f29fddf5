#pragma once

#include "exmort/design.hpp"

#include <Eigen/Dense>

#include <vector>

namespace exmort {

struct IrlsOptions {
    double tolerance = 1e-10; // relative deviance change, |dev-prev| / (|dev|+0.1)
    int max_iter = 50;
};

struct FitDiagnostics {
    int iterations = 0;
    double final_rel_change = 0.0;
    bool converged = false;
    std::vector<double> deviance_history; // deviance after each IRLS step
};

/// A fitted quasi-Poisson model: coefficients, scaled coefficient covariance
/// phi * (X'WX)^-1, Pearson dispersion, and the design metadata needed to
/// project the fit onto new months.
struct ModelFit {
    DesignInfo info;
    Eigen::VectorXd beta;
    Eigen::MatrixXd covariance;
    double dispersion = 1.0;     // floored at 1.0; this is what CIs use
    double dispersion_raw = 1.0; // unfloored Pearson estimate (NaN when n == p)
    FitDiagnostics diagnostics;
};

/// Poisson deviance, with the y log(y/mu) term taken as 0 at y = 0.
double poisson_deviance(const Eigen::VectorXd& y, const Eigen::VectorXd& mu);

/// Raw Pearson dispersion sum((y-mu)^2/mu) / (n-p).
/// Throws Error{DegenerateDoF} when n <= p.
double pearson_dispersion_raw(const Eigen::VectorXd& y, const Eigen::VectorXd& mu, int p);

/// Pearson dispersion floored at 1.0, so small underdispersed samples never
/// shrink intervals below the Poisson baseline.
double pearson_dispersion(const Eigen::VectorXd& y, const Eigen::VectorXd& mu, int p);

/// Iteratively reweighted least squares for the log-link Poisson likelihood
/// with offset. Weighted solves use a rank-revealing column-pivoted QR; a
/// rank-deficient design is an error naming the dependent column. Starts at
/// beta = 0 except intercept = log(sum y / sum exposure).
/// Throws Error{SingularDesign} or Error{NonConvergence}.
ModelFit fit_irls(const DesignBundle& design, const IrlsOptions& options = {});

/// exp(offset + X beta).
Eigen::VectorXd fitted_means(const DesignBundle& design, const ModelFit& fit);

} // namespace exmort
