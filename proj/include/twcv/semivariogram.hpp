#pragma once

#include <vector>

#include "twcv/types.hpp"

namespace twcv {

/// Binned empirical semivariogram; bins without pairs are dropped.
struct EmpiricalSemivariogram {
    std::vector<double> lag;        // bin centers, increasing
    std::vector<double> gamma;      // robust estimates per bin
    std::vector<std::size_t> pairs; // pair counts per bin

    std::size_t size() const { return lag.size(); }
};

/// Exponential semivariogram gamma(h) = nugget + psill * (1 - exp(-h/range)).
struct SemivariogramModel {
    double nugget = 0.0;
    double partial_sill = 1.0;
    double range = 0.1;

    double value(double h) const;
    /// Covariance of the corresponding second-order stationary field:
    /// psill * exp(-h/range) for h > 0, psill + nugget at h = 0.
    double covariance(double h) const;
};

struct SvgmFit {
    SemivariogramModel model;
    bool converged = false;
    /// False when the partial sill collapses to ~0 and the range cannot be
    /// identified from the data.
    bool range_identifiable = true;
    double weighted_sse = 0.0;
};

/// Cressie's robust estimator: per bin, 2*gamma = mean(|r_i - r_j|^(1/2))^4
/// / (0.457 + 0.494/N). Default binning: n_bins equal-width lags up to
/// max_lag; max_lag <= 0 means half the maximum pairwise distance.
EmpiricalSemivariogram cressie_semivariogram(const std::vector<double>& residuals,
                                             const std::vector<Location>& locations,
                                             double max_lag = 0.0, int n_bins = 15);

/// Weighted least squares fit of the exponential model with weights
/// N_j / h_j^2; linear parameters are profiled per range update and
/// nonnegativity is enforced by projection.
SvgmFit fit_exponential_svgm(const EmpiricalSemivariogram& emp);

}  // namespace twcv
