#pragma once

#include <string>
#include <vector>

namespace twcv {

/// Fitted linear trend: intercept plus coefficients for the selected
/// variables, with the residual variance estimate.
struct TrendModel {
    std::vector<std::string> selected_variables;
    double intercept = 0.0;
    std::vector<double> coefficients;  // aligned with selected_variables
    double residual_variance = 0.0;
    std::size_t n_train = 0;

    /// Trend value for a row holding the selected variables in order.
    double predict(const std::vector<double>& row) const;
};

/// Ordinary least squares with intercept. X holds one row per observation
/// over `variables`. Throws on rank deficiency, naming the collinear columns.
TrendModel fit_ols(const std::vector<std::vector<double>>& X, const std::vector<double>& y,
                   const std::vector<std::string>& variables);

/// Greedy forward selection minimizing BIC = n*ln(RSS/n) + k*ln(n); stops
/// when no candidate lowers the criterion. Ties break by candidate order.
TrendModel forward_bic(const std::vector<std::vector<double>>& X, const std::vector<double>& y,
                       const std::vector<std::string>& candidates);

}  // namespace twcv
