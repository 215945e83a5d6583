#include "twcv/linear_model.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace twcv {
namespace {

struct OlsFit {
    Eigen::VectorXd beta;  // intercept first
    double rss = 0.0;
};

/// Core solve on a column subset; reports rank deficiency via `collinear`.
OlsFit solve_ols(const std::vector<std::vector<double>>& X, const std::vector<double>& y,
                 const std::vector<std::size_t>& columns, std::vector<std::size_t>* collinear) {
    const std::size_t n = y.size();
    const std::size_t p = columns.size();
    Eigen::MatrixXd design(n, p + 1);
    Eigen::VectorXd response(n);
    for (std::size_t i = 0; i < n; ++i) {
        design(i, 0) = 1.0;
        for (std::size_t j = 0; j < p; ++j) design(i, j + 1) = X[i][columns[j]];
        response(i) = y[i];
    }
    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(design);
    qr.setThreshold(1e-10);
    if (qr.rank() < static_cast<Eigen::Index>(p + 1)) {
        if (collinear) {
            // Columns beyond the numerical rank, in pivot order, are the
            // linearly dependent ones.
            const auto& perm = qr.colsPermutation().indices();
            for (Eigen::Index k = qr.rank(); k < perm.size(); ++k) {
                const Eigen::Index col = perm(k);
                if (col > 0) collinear->push_back(columns[static_cast<std::size_t>(col - 1)]);
            }
        }
        return {Eigen::VectorXd(), std::numeric_limits<double>::quiet_NaN()};
    }
    OlsFit fit;
    fit.beta = qr.solve(response);
    fit.rss = (response - design * fit.beta).squaredNorm();
    return fit;
}

double bic_linear(double rss, std::size_t n, std::size_t k) {
    const double mean_rss = std::max(rss / static_cast<double>(n), 1e-300);
    return static_cast<double>(n) * std::log(mean_rss) +
           static_cast<double>(k) * std::log(static_cast<double>(n));
}

TrendModel model_from_fit(const OlsFit& fit, const std::vector<std::string>& variables,
                          const std::vector<std::size_t>& columns, std::size_t n) {
    TrendModel model;
    model.n_train = n;
    model.intercept = fit.beta(0);
    for (std::size_t j = 0; j < columns.size(); ++j) {
        model.selected_variables.push_back(variables[columns[j]]);
        model.coefficients.push_back(fit.beta(static_cast<Eigen::Index>(j + 1)));
    }
    const double dof = static_cast<double>(n) - static_cast<double>(columns.size()) - 1.0;
    model.residual_variance = dof > 0.0 ? fit.rss / dof : 0.0;
    return model;
}

}  // namespace

double TrendModel::predict(const std::vector<double>& row) const {
    double value = intercept;
    for (std::size_t j = 0; j < coefficients.size(); ++j) value += coefficients[j] * row[j];
    return value;
}

TrendModel fit_ols(const std::vector<std::vector<double>>& X, const std::vector<double>& y,
                   const std::vector<std::string>& variables) {
    const std::size_t n = y.size();
    if (X.size() != n) throw std::invalid_argument("X/y row mismatch");
    const std::size_t p = variables.size();
    if (n < p + 2) throw std::invalid_argument("too few observations for the trend fit");

    std::vector<std::size_t> columns(p);
    for (std::size_t j = 0; j < p; ++j) columns[j] = j;
    std::vector<std::size_t> collinear;
    const OlsFit fit = solve_ols(X, y, columns, &collinear);
    if (!std::isfinite(fit.rss)) {
        std::string msg = "rank-deficient design; collinear column(s):";
        for (std::size_t c : collinear) msg += " " + variables[c];
        throw std::invalid_argument(msg);
    }
    return model_from_fit(fit, variables, columns, n);
}

TrendModel forward_bic(const std::vector<std::vector<double>>& X, const std::vector<double>& y,
                       const std::vector<std::string>& candidates) {
    const std::size_t n = y.size();
    if (X.size() != n) throw std::invalid_argument("X/y row mismatch");
    if (n < 3) throw std::invalid_argument("too few observations for selection");

    std::vector<std::size_t> selected;
    std::vector<bool> in_model(candidates.size(), false);
    OlsFit best_fit = solve_ols(X, y, selected, nullptr);
    double best_bic = bic_linear(best_fit.rss, n, 1);

    for (;;) {
        double round_best_bic = best_bic;
        std::size_t round_best_col = candidates.size();
        OlsFit round_best_fit;
        for (std::size_t c = 0; c < candidates.size(); ++c) {
            if (in_model[c]) continue;
            if (n < selected.size() + 3) break;  // keep a residual dof
            std::vector<std::size_t> trial = selected;
            trial.push_back(c);
            const OlsFit fit = solve_ols(X, y, trial, nullptr);
            if (!std::isfinite(fit.rss)) continue;  // collinear with current set
            const double bic = bic_linear(fit.rss, n, trial.size() + 1);
            if (bic < round_best_bic) {  // strict improvement; ties keep earlier order
                round_best_bic = bic;
                round_best_col = c;
                round_best_fit = fit;
            }
        }
        if (round_best_col == candidates.size()) break;
        selected.push_back(round_best_col);
        in_model[round_best_col] = true;
        best_fit = round_best_fit;
        best_bic = round_best_bic;
    }
    return model_from_fit(best_fit, candidates, selected, n);
}

}  // namespace twcv
