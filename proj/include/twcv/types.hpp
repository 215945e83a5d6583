#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace twcv {

/// A point in a projected (planar) coordinate system. Simulation uses the
/// unit square; ingested data must already be projected.
struct Location {
    double x = 0.0;
    double y = 0.0;
};

/// Training sample: n locations with a p-column covariate matrix (row-major,
/// one row per observation) and a response vector.
struct Dataset {
    std::vector<Location> locations;
    std::vector<std::vector<double>> covariates;  // n rows, p columns
    std::vector<std::string> covariate_names;     // p labels, unique
    std::vector<double> response;

    std::size_t n() const { return locations.size(); }
    std::size_t p() const { return covariate_names.size(); }

    /// Column index of a named covariate; throws if absent.
    std::size_t covariate_index(const std::string& name) const;

    /// Enforces the structural invariants (equal row counts, n >= 2,
    /// finite entries, unique names). Throws std::invalid_argument.
    void validate() const;
};

/// One prediction task: covariate values at the prediction location plus the
/// prediction distance d (distance to the nearest training observation).
struct TaskDescriptor {
    std::vector<double> covariates;
    double d = 0.0;
};

/// A held-out evaluation unit produced by a task generator.
struct ValidationTask {
    int task_id = 0;
    int target_index = 0;                // index into the source Dataset
    std::vector<int> train_indices;      // never contains target_index
    TaskDescriptor descriptor;           // descriptor.d = nn distance to train set
};

/// The deployment-side task distribution: one descriptor per prediction
/// location in the target domain.
struct TargetTaskSet {
    std::vector<TaskDescriptor> descriptors;
    std::vector<std::string> covariate_names;

    std::size_t size() const { return descriptors.size(); }
};

/// Dataset with covariate columns restricted to `names` (in that order).
/// Locations and response are shared copies.
Dataset subset_covariates(const Dataset& data, const std::vector<std::string>& names);

}  // namespace twcv
