#include "exmort/glm.hpp"

#include "exmort/errors.hpp"

#include <cmath>
#include <limits>
#include <string>

namespace exmort {

namespace {

constexpr double kEtaClamp = 500.0; // exp stays finite and invertible
constexpr double kWeightFloor = 1e-12;

Eigen::VectorXd mean_from_eta(const Eigen::VectorXd& eta) {
    return eta.array().min(kEtaClamp).max(-kEtaClamp).exp();
}

void check_rank(const Eigen::ColPivHouseholderQR<Eigen::MatrixXd>& qr,
                const DesignBundle& design) {
    const int p = static_cast<int>(design.X.cols());
    if (qr.rank() >= p) return;
    const auto perm = qr.colsPermutation().indices();
    const int offending = perm(qr.rank());
    std::string label = offending < static_cast<int>(design.info.column_labels.size())
                            ? design.info.column_labels[static_cast<std::size_t>(offending)]
                            : "column " + std::to_string(offending);
    throw Error(ErrorKind::SingularDesign,
                "design matrix is rank deficient (rank " + std::to_string(qr.rank()) + " of " +
                    std::to_string(p) + "), dependent column '" + label + "'");
}

} // namespace

double poisson_deviance(const Eigen::VectorXd& y, const Eigen::VectorXd& mu) {
    double dev = 0.0;
    for (Eigen::Index i = 0; i < y.size(); ++i) {
        const double yi = y(i);
        const double mi = mu(i);
        dev += yi > 0.0 ? yi * std::log(yi / mi) - (yi - mi) : mi;
    }
    return 2.0 * dev;
}

double pearson_dispersion_raw(const Eigen::VectorXd& y, const Eigen::VectorXd& mu, int p) {
    const int n = static_cast<int>(y.size());
    if (n <= p) {
        throw Error(ErrorKind::DegenerateDoF,
                    "Pearson dispersion needs n > p, got n = " + std::to_string(n) +
                        ", p = " + std::to_string(p));
    }
    double sum = 0.0;
    for (Eigen::Index i = 0; i < y.size(); ++i) {
        const double r = y(i) - mu(i);
        sum += r * r / mu(i);
    }
    return sum / static_cast<double>(n - p);
}

double pearson_dispersion(const Eigen::VectorXd& y, const Eigen::VectorXd& mu, int p) {
    return std::max(1.0, pearson_dispersion_raw(y, mu, p));
}

ModelFit fit_irls(const DesignBundle& design, const IrlsOptions& options) {
    const Eigen::Index n = design.X.rows();
    const Eigen::Index p = design.X.cols();
    if (n < p) {
        throw Error(ErrorKind::SingularDesign,
                    "fewer rows (" + std::to_string(n) + ") than columns (" + std::to_string(p) +
                        ")");
    }
    if ((design.y.array() < 0.0).any()) {
        throw Error(ErrorKind::NegativeCount, "response contains negative values");
    }
    if (!design.offset.allFinite()) {
        throw Error(ErrorKind::ZeroExposure, "offsets must be finite");
    }

    const double sum_y = design.y.sum();
    const double sum_exposure = design.offset.array().exp().sum();
    if (!(sum_y > 0.0)) {
        throw Error(ErrorKind::NonConvergence,
                    "all-zero response, the Poisson MLE does not exist");
    }

    Eigen::VectorXd beta = Eigen::VectorXd::Zero(p);
    beta(0) = std::log(sum_y / sum_exposure);

    Eigen::VectorXd eta = design.offset + design.X * beta;
    Eigen::VectorXd mu = mean_from_eta(eta);

    FitDiagnostics diag;
    double deviance = poisson_deviance(design.y, mu);
    diag.deviance_history.push_back(deviance);

    Eigen::MatrixXd scaled_x(n, p);
    Eigen::VectorXd scaled_z(n);
    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr;

    for (int iter = 1; iter <= options.max_iter; ++iter) {
        Eigen::VectorXd w = mu.array().max(kWeightFloor);
        Eigen::VectorXd sqrt_w = w.array().sqrt();
        // working response for the coefficient part of the predictor
        Eigen::VectorXd z =
            (eta - design.offset).array() + (design.y - mu).array() / w.array();
        scaled_x = sqrt_w.asDiagonal() * design.X;
        scaled_z = sqrt_w.asDiagonal() * z;

        qr.compute(scaled_x);
        if (iter == 1) check_rank(qr, design);
        beta = qr.solve(scaled_z);

        eta = design.offset + design.X * beta;
        mu = mean_from_eta(eta);

        const double new_deviance = poisson_deviance(design.y, mu);
        const double rel_change =
            std::abs(new_deviance - deviance) / (std::abs(new_deviance) + 0.1);
        deviance = new_deviance;
        diag.deviance_history.push_back(deviance);
        diag.iterations = iter;
        diag.final_rel_change = rel_change;
        if (rel_change < options.tolerance) {
            diag.converged = true;
            break;
        }
    }

    if (!diag.converged) {
        throw Error(ErrorKind::NonConvergence,
                    "IRLS did not converge in " + std::to_string(diag.iterations) +
                        " iterations, last relative deviance change " +
                        std::to_string(diag.final_rel_change));
    }

    ModelFit fit;
    fit.info = design.info;
    fit.beta = beta;

    // Covariance at the converged weights.
    Eigen::VectorXd w = mu.array().max(kWeightFloor);
    Eigen::VectorXd sqrt_w = w.array().sqrt();
    scaled_x = sqrt_w.asDiagonal() * design.X;
    qr.compute(scaled_x);
    check_rank(qr, design);
    Eigen::MatrixXd r_inv =
        qr.matrixR().topRows(p).triangularView<Eigen::Upper>().solve(
            Eigen::MatrixXd::Identity(p, p));
    Eigen::MatrixXd unscaled = r_inv * r_inv.transpose(); // (R'R)^-1
    const auto& perm = qr.colsPermutation();
    Eigen::MatrixXd xtwx_inv = perm * unscaled * perm.transpose();

    if (n > p) {
        fit.dispersion_raw = pearson_dispersion_raw(design.y, mu, static_cast<int>(p));
        fit.dispersion = std::max(1.0, fit.dispersion_raw);
    } else {
        // saturated fit, Pearson dispersion undefined; the floor is the value
        fit.dispersion_raw = std::numeric_limits<double>::quiet_NaN();
        fit.dispersion = 1.0;
    }
    fit.covariance = fit.dispersion * xtwx_inv;
    fit.covariance = 0.5 * (fit.covariance + fit.covariance.transpose()).eval();
    fit.diagnostics = std::move(diag);
    return fit;
}

Eigen::VectorXd fitted_means(const DesignBundle& design, const ModelFit& fit) {
    return mean_from_eta(design.offset + design.X * fit.beta);
}

} // namespace exmort
