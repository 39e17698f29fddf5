#include "exmort/expected.hpp"

#include "exmort/errors.hpp"
#include "exmort/rng.hpp"

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <thread>

namespace exmort {

namespace {

// Square root of a positive semi-definite matrix. Cholesky when it succeeds;
// otherwise an eigendecomposition with negative eigenvalues clamped to zero,
// which tolerates the tiny asymmetries a near-singular covariance can carry.
Eigen::MatrixXd psd_sqrt(const Eigen::MatrixXd& m) {
    Eigen::LLT<Eigen::MatrixXd> llt(m);
    if (llt.info() == Eigen::Success) return llt.matrixL();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(m);
    Eigen::VectorXd lam = eig.eigenvalues().cwiseMax(0.0).cwiseSqrt();
    return eig.eigenvectors() * lam.asDiagonal();
}

} // namespace

ExpectedDeaths expected_deaths(const ModelFit& fit, const MonthlyExposure& exposure,
                               const MonthRange& window, int draws, std::uint64_t seed) {
    if (draws < 1) throw Error(ErrorKind::InvalidSpec, "draw count must be at least 1");
    if (!exposure.covers(window))
        throw Error(ErrorKind::WindowNotCovered,
                    "exposure spans " + exposure.window().str() + " but projection window is " +
                        window.str());

    const DesignInfo& info = fit.info;
    const bool strat = info.spec.stratification == Stratification::AgeSex;

    ExpectedDeaths out;
    out.window = window;
    out.dispersion = fit.dispersion;
    out.seed = seed;
    out.num_draws = draws;
    if (draws < 100)
        out.warnings.push_back("only " + std::to_string(draws) +
                               " draws requested; interval estimates need at least 100");

    const int n_months = window.count();
    const int n_cells = strat ? n_months * kNumStrata : n_months;
    const int p = static_cast<int>(fit.beta.size());

    out.cells.reserve(static_cast<std::size_t>(n_cells));
    Eigen::MatrixXd x_cells(n_cells, p);
    Eigen::VectorXd offset(n_cells);

    int i = 0;
    for (Month m = window.first; m.index() <= window.last.index(); m = m.next()) {
        if (strat) {
            const StratumValues& py = exposure.person_years(m);
            for (const StratumKey& s : all_strata()) {
                out.cells.push_back(RowKey{m, s});
                x_cells.row(i) = design_row(info, m, s);
                offset(i) = std::log(py[s.index()]);
                ++i;
            }
        } else {
            double total_py = 0.0;
            for (double v : exposure.person_years(m)) total_py += v;
            out.cells.push_back(RowKey{m, std::nullopt});
            x_cells.row(i) = design_row(info, m, std::nullopt);
            offset(i) = std::log(total_py);
            ++i;
        }
    }

    out.mean = (offset + x_cells * fit.beta).array().exp();
    out.draws.resize(n_cells, draws);

    const Eigen::MatrixXd coef_sqrt = psd_sqrt(fit.covariance);
    const double phi = fit.dispersion;

    auto run_block = [&](int b0, int b1) {
        Eigen::VectorXd z(p);
        Eigen::VectorXd beta_b(p);
        Eigen::VectorXd mu_b(n_cells);
        for (int b = b0; b < b1; ++b) {
            NormalSampler normal(derive_seed(seed, static_cast<std::uint64_t>(b)));
            for (int j = 0; j < p; ++j) z(j) = normal();
            beta_b = fit.beta + coef_sqrt * z;
            mu_b = (offset + x_cells * beta_b).array().exp();
            for (int c = 0; c < n_cells; ++c) {
                double v = mu_b(c) + std::sqrt(phi * mu_b(c)) * normal();
                out.draws(c, b) = v < 0.0 ? 0.0 : v;
            }
        }
    };

    unsigned hw = std::thread::hardware_concurrency();
    int n_threads = std::max(1, std::min<int>(static_cast<int>(hw), draws / 256));
    if (n_threads <= 1) {
        run_block(0, draws);
    } else {
        std::vector<std::thread> pool;
        pool.reserve(static_cast<std::size_t>(n_threads));
        int per = (draws + n_threads - 1) / n_threads;
        for (int t = 0; t < n_threads; ++t) {
            int b0 = t * per;
            int b1 = std::min(draws, b0 + per);
            if (b0 >= b1) break;
            pool.emplace_back(run_block, b0, b1);
        }
        for (auto& th : pool) th.join();
    }

    return out;
}

ExpectedDeaths slice(const ExpectedDeaths& expected, const MonthRange& subwindow) {
    if (subwindow.first.index() < expected.window.first.index() ||
        subwindow.last.index() > expected.window.last.index())
        throw Error(ErrorKind::WindowNotCovered,
                    "sub-window " + subwindow.str() + " exceeds projected window " +
                        expected.window.str());

    std::vector<int> keep;
    for (int c = 0; c < static_cast<int>(expected.cells.size()); ++c) {
        int idx = expected.cells[static_cast<std::size_t>(c)].month.index();
        if (idx >= subwindow.first.index() && idx <= subwindow.last.index()) keep.push_back(c);
    }

    ExpectedDeaths out;
    out.window = subwindow;
    out.dispersion = expected.dispersion;
    out.seed = expected.seed;
    out.num_draws = expected.num_draws;
    out.warnings = expected.warnings;
    out.cells.reserve(keep.size());
    out.mean.resize(static_cast<Eigen::Index>(keep.size()));
    out.draws.resize(static_cast<Eigen::Index>(keep.size()), expected.num_draws);
    for (std::size_t r = 0; r < keep.size(); ++r) {
        int c = keep[r];
        out.cells.push_back(expected.cells[static_cast<std::size_t>(c)]);
        out.mean(static_cast<Eigen::Index>(r)) = expected.mean(c);
        out.draws.row(static_cast<Eigen::Index>(r)) = expected.draws.row(c);
    }
    return out;
}

} // namespace exmort
