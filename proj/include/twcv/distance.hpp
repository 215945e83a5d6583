#pragma once

#include <vector>

#include "twcv/types.hpp"

namespace twcv {

/// Planar Euclidean distance.
double pairwise_distance(const Location& a, const Location& b);

/// Distance from `target` to its nearest neighbour in `pool`.
/// Throws std::invalid_argument on an empty pool.
double nn_distance(const Location& target, const std::vector<Location>& pool);

/// Builds the deployment task set: one descriptor per grid location, with
/// d measured against the full training sample.
TargetTaskSet build_deployment_tasks(const std::vector<Location>& grid_locations,
                                     const std::vector<std::vector<double>>& grid_covariates,
                                     const std::vector<std::string>& covariate_names,
                                     const std::vector<Location>& training_locations);

}  // namespace twcv
