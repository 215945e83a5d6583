#pragma once

#include <memory>
#include <vector>

#include "twcv/rng.hpp"
#include "twcv/types.hpp"

namespace twcv {

/// Exponential covariance family C(h) = sill * exp(-h / range).
struct CovarianceSpec {
    double range = 0.1;
    double sill = 1.0;
};

/// Covariance at lag h; throws on negative h.
double exp_covariance(double h, const CovarianceSpec& spec);

/// Draws mean-zero Gaussian random fields on a fixed location set via dense
/// Cholesky. The factorization is the expensive part, so one simulator can
/// serve many draws; instances are immutable after construction and safe to
/// share across threads.
class GrfSimulator {
  public:
    GrfSimulator(const std::vector<Location>& locations, const CovarianceSpec& spec);

    std::vector<double> draw(Rng& rng) const;

    std::size_t size() const { return n_; }
    /// Diagonal jitter that was needed to make the Cholesky succeed (0 when
    /// the plain matrix factorized).
    double jitter() const { return jitter_; }

  private:
    std::size_t n_;
    double jitter_ = 0.0;
    struct Factor;
    std::shared_ptr<const Factor> factor_;
};

/// One draw of a mean-zero GRF with exponential covariance; convenience
/// wrapper when no factor reuse is wanted.
std::vector<double> simulate_grf(const std::vector<Location>& locations,
                                 const CovarianceSpec& spec, Rng& rng);

/// Process-wide cache of simulators keyed by (locations, spec); the grid and
/// covariance specs recur across replicates, so factorizations are shared.
std::shared_ptr<const GrfSimulator> cached_grf_simulator(
    const std::vector<Location>& locations, const CovarianceSpec& spec);

}  // namespace twcv
