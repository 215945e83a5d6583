#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "twcv/types.hpp"

namespace twcv {

/// The output of a validation task generator.
struct TaskSet {
    std::vector<ValidationTask> tasks;
    std::string generator_label;
    std::map<std::string, std::string> generator_params;
    /// Buffer radius per task; only the buffered generator fills this.
    std::vector<double> buffer_radii;

    std::size_t size() const { return tasks.size(); }
};

/// Leave-one-out: n tasks, task i trains on all j != i.
TaskSet gen_loocv(const Dataset& data);

/// Random k-fold: near-equal random folds, one task per observation
/// training on out-of-fold data.
TaskSet gen_random_kfold(const Dataset& data, int k, std::uint64_t seed);

/// Leave-one-block-out over k-means blocks of the observation coordinates
/// (10 restarts, best within-cluster SS).
TaskSet gen_spatial_blocks(const Dataset& data, int k, std::uint64_t seed);

struct BufferedLooOptions {
    int n_tasks = 500;
    double min_train_frac = 0.8;
};

/// Buffered leave-one-out resampling: targets cycle a shuffled observation
/// order; each task excludes all observations within a buffer radius drawn
/// uniformly on (0, r_max), where r_max keeps the training fraction at or
/// above min_train_frac.
TaskSet gen_buffered_loo(const Dataset& data, const BufferedLooOptions& options,
                         std::uint64_t seed);

}  // namespace twcv
