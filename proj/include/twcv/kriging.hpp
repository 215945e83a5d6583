#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "twcv/linear_model.hpp"
#include "twcv/semivariogram.hpp"
#include "twcv/types.hpp"

namespace twcv {

/// Linear residual-variance model sigma^2(s) = max(a + b * v(s), floor),
/// with v a named covariate.
struct VarianceModel {
    std::string covariate;
    double a = 0.0;
    double b = 0.0;
    double floor = 0.0;

    double variance(double covariate_value) const;
};

struct KrigingPrediction {
    double mean = 0.0;
    double variance = 0.0;  // prediction variance for a new observation
};

/// Regression-kriging model: linear trend plus simple kriging of the
/// (optionally variance-standardized) residuals. Immutable once built;
/// prediction is const and thread-safe.
class KrigingModel {
  public:
    /// Assembles a model from already-estimated components and factorizes
    /// the residual covariance. `data` must hold the trend variables (and
    /// the variance covariate, when given).
    KrigingModel(Dataset data, TrendModel trend, SemivariogramModel svgm,
                 std::optional<VarianceModel> variance_model);

    KrigingPrediction predict(const Location& location,
                              const std::vector<double>& covariates) const;

    const TrendModel& trend() const { return trend_; }
    const SemivariogramModel& semivariogram() const { return svgm_; }
    const std::optional<VarianceModel>& variance_model() const { return variance_model_; }
    const SvgmFit& svgm_fit_info() const { return svgm_info_; }

  private:
    friend struct KrigingFitAccess;
    Dataset data_;
    TrendModel trend_;
    SemivariogramModel svgm_;
    std::optional<VarianceModel> variance_model_;
    SvgmFit svgm_info_{};  // populated when built by fit_rk
    std::vector<std::size_t> trend_columns_;
    std::size_t variance_column_ = 0;
    struct Solver;
    std::shared_ptr<const Solver> solver_;
};

struct RkOptions {
    std::vector<std::string> trend_variables;
    /// Select trend variables by forward BIC instead of using all of them.
    bool select_trend = false;
    bool heteroskedastic = false;
    std::optional<std::string> variance_covariate;
    int svgm_bins = 15;
    double svgm_max_lag = 0.0;  // <= 0: half the max pairwise distance
};

/// Fits trend, (optional) variance model and residual semivariogram, then
/// assembles the kriging model.
KrigingModel fit_rk(const Dataset& data, const RkOptions& options);

/// Free-function form of KrigingModel::predict.
KrigingPrediction krige_predict(const KrigingModel& model, const Location& location,
                                const std::vector<double>& covariates);

}  // namespace twcv
