#pragma once

#include <memory>
#include <string>
#include <vector>

#include "twcv/random_field.hpp"
#include "twcv/rng.hpp"
#include "twcv/types.hpp"

namespace twcv {

enum class SamplingDesign { kRandom, kClustered, kBiased };

SamplingDesign parse_design(const std::string& name);  // throws on unknown names
std::string design_name(SamplingDesign design);

/// Simulation scenario: response trend, residual field range, sample size
/// and sampling design on a grid_side x grid_side unit-square grid.
struct ScenarioConfig {
    double beta0 = 0.0;
    double beta1 = 3.0;
    double beta2 = 1.0;
    double rho = 0.1;
    int n = 200;
    SamplingDesign design = SamplingDesign::kRandom;
    int grid_side = 60;
    bool include_extra_predictors = true;

    void validate() const;
};

/// Simulated ground truth on the grid. x1 is the west-east gradient (the
/// x coordinate), x2/x4 are independent structured Gaussian fields, x3 the
/// north-south gradient; z = beta0 + beta1*x1 + beta2*x2 + eps.
struct World {
    std::vector<Location> grid;
    std::vector<double> x1, x2, x3, x4;
    std::vector<double> eps;
    std::vector<double> z;
    bool has_extra_predictors = false;

    std::size_t size() const { return grid.size(); }
    std::vector<std::string> covariate_names() const;
    /// Covariate matrix over the grid in covariate_names() order.
    std::vector<std::vector<double>> covariate_rows() const;
};

/// Residual standard deviation profile: sd(s) = sqrt(0.4 + 1.2 * s.x),
/// a fourfold west-to-east variance increase.
double residual_sd(const Location& s);

/// Holds the (cached) GRF factorizations for a scenario so that repeated
/// world draws skip re-factorizing; immutable and shareable across threads.
class WorldFactory {
  public:
    explicit WorldFactory(const ScenarioConfig& cfg);

    World make(Rng& rng) const;
    const std::vector<Location>& grid() const { return grid_; }

  private:
    ScenarioConfig cfg_;
    std::vector<Location> grid_;
    std::shared_ptr<const GrfSimulator> predictor_field_;  // x2 and x4
    std::shared_ptr<const GrfSimulator> residual_field_;   // eps0, range rho
};

World make_world(const ScenarioConfig& cfg, Rng& rng);

/// Draws the training sample: continuous-space locations per the design,
/// snapped to distinct grid nodes so field values are exact.
Dataset draw_sample(const World& world, const ScenarioConfig& cfg, Rng& rng);

/// Covariance spec of the spatially structured predictor fields x2/x4.
CovarianceSpec predictor_field_spec();

}  // namespace twcv
