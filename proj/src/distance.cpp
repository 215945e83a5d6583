#include "twcv/distance.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace twcv {

double pairwise_distance(const Location& a, const Location& b) {
    return std::hypot(a.x - b.x, a.y - b.y);
}

double nn_distance(const Location& target, const std::vector<Location>& pool) {
    if (pool.empty()) throw std::invalid_argument("empty training pool");
    double best = std::numeric_limits<double>::infinity();
    for (const auto& p : pool) {
        const double d = pairwise_distance(target, p);
        if (d < best) best = d;
    }
    return best;
}

TargetTaskSet build_deployment_tasks(const std::vector<Location>& grid_locations,
                                     const std::vector<std::vector<double>>& grid_covariates,
                                     const std::vector<std::string>& covariate_names,
                                     const std::vector<Location>& training_locations) {
    if (training_locations.empty()) throw std::invalid_argument("empty training pool");
    if (grid_covariates.size() != grid_locations.size()) {
        throw std::invalid_argument("grid covariate rows (" + std::to_string(grid_covariates.size()) +
                                    ") do not match grid locations (" +
                                    std::to_string(grid_locations.size()) + ")");
    }
    TargetTaskSet out;
    out.covariate_names = covariate_names;
    out.descriptors.reserve(grid_locations.size());
    for (std::size_t i = 0; i < grid_locations.size(); ++i) {
        if (grid_covariates[i].size() != covariate_names.size()) {
            throw std::invalid_argument("grid covariate width mismatch at row " + std::to_string(i));
        }
        TaskDescriptor desc;
        desc.covariates = grid_covariates[i];
        desc.d = nn_distance(grid_locations[i], training_locations);
        out.descriptors.push_back(std::move(desc));
    }
    return out;
}

}  // namespace twcv
