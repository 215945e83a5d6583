#include "twcv/taskgen.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "twcv/distance.hpp"
#include "twcv/kmeans.hpp"
#include "twcv/rng.hpp"

namespace twcv {
namespace {

/// Fills descriptor covariates from the target row and d from the training
/// index set.
TaskDescriptor make_descriptor(const Dataset& data, int target,
                               const std::vector<int>& train_indices) {
    TaskDescriptor desc;
    desc.covariates = data.covariates[static_cast<std::size_t>(target)];
    double best = std::numeric_limits<double>::infinity();
    const Location& t = data.locations[static_cast<std::size_t>(target)];
    for (int j : train_indices) {
        best = std::min(best, pairwise_distance(t, data.locations[static_cast<std::size_t>(j)]));
    }
    desc.d = best;
    return desc;
}

TaskSet tasks_from_folds(const Dataset& data, const std::vector<int>& fold_of,
                         const std::string& label) {
    const int n = static_cast<int>(data.n());
    TaskSet set;
    set.generator_label = label;
    set.tasks.reserve(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        ValidationTask task;
        task.task_id = i;
        task.target_index = i;
        task.train_indices.reserve(static_cast<std::size_t>(n - 1));
        for (int j = 0; j < n; ++j) {
            if (fold_of[static_cast<std::size_t>(j)] != fold_of[static_cast<std::size_t>(i)]) {
                task.train_indices.push_back(j);
            }
        }
        if (task.train_indices.empty()) {
            throw std::invalid_argument(label + ": a fold covers the whole dataset, training set empty");
        }
        task.descriptor = make_descriptor(data, i, task.train_indices);
        set.tasks.push_back(std::move(task));
    }
    return set;
}

}  // namespace

TaskSet gen_loocv(const Dataset& data) {
    const int n = static_cast<int>(data.n());
    if (n < 2) throw std::invalid_argument("loocv needs at least 2 observations");
    std::vector<int> fold(static_cast<std::size_t>(n));
    std::iota(fold.begin(), fold.end(), 0);  // every observation its own fold
    return tasks_from_folds(data, fold, "loocv");
}

TaskSet gen_random_kfold(const Dataset& data, int k, std::uint64_t seed) {
    const int n = static_cast<int>(data.n());
    if (k < 2) throw std::invalid_argument("k-fold needs k >= 2");
    if (k > n) throw std::invalid_argument("k exceeds the number of observations");
    std::vector<int> order(static_cast<std::size_t>(n));
    std::iota(order.begin(), order.end(), 0);
    Rng rng(seed);
    rng.shuffle(order);
    std::vector<int> fold(static_cast<std::size_t>(n));
    for (int pos = 0; pos < n; ++pos) {
        fold[static_cast<std::size_t>(order[static_cast<std::size_t>(pos)])] = pos % k;
    }
    TaskSet set = tasks_from_folds(data, fold, "random_kfold");
    set.generator_params["k"] = std::to_string(k);
    return set;
}

TaskSet gen_spatial_blocks(const Dataset& data, int k, std::uint64_t seed) {
    if (k < 2) throw std::invalid_argument("spatial blocks need k >= 2: a single block has no training data");
    const KMeansResult blocks = kmeans(data.locations, k, 10, seed);
    TaskSet set = tasks_from_folds(data, blocks.assignment, "spatial_blocks");
    set.generator_params["k"] = std::to_string(k);
    return set;
}

TaskSet gen_buffered_loo(const Dataset& data, const BufferedLooOptions& options,
                         std::uint64_t seed) {
    const int n = static_cast<int>(data.n());
    if (n < 5) throw std::invalid_argument("buffered loo needs at least 5 observations");
    if (options.n_tasks < 1) throw std::invalid_argument("n_tasks must be positive");
    if (!(options.min_train_frac > 0.0 && options.min_train_frac < 1.0)) {
        throw std::invalid_argument("min_train_frac must lie in (0, 1)");
    }
    const int min_train =
        static_cast<int>(std::ceil(options.min_train_frac * static_cast<double>(n)));
    if (min_train > n - 1) {
        throw std::invalid_argument("min_train_frac leaves no room for a held-out target");
    }
    // Largest number of observations the buffer may exclude besides the target.
    const int max_excluded = (n - 1) - min_train;

    Rng rng(seed);
    // Targets cycle a shuffled order so every observation anchors a balanced
    // number of tasks; the same observation appears in many tasks once
    // n_tasks exceeds n.
    std::vector<int> order(static_cast<std::size_t>(n));
    std::iota(order.begin(), order.end(), 0);
    rng.shuffle(order);

    TaskSet set;
    set.generator_label = "buffered_loo";
    set.generator_params["n_tasks"] = std::to_string(options.n_tasks);
    set.generator_params["min_train_frac"] = std::to_string(options.min_train_frac);
    set.tasks.reserve(static_cast<std::size_t>(options.n_tasks));
    set.buffer_radii.reserve(static_cast<std::size_t>(options.n_tasks));

    std::vector<double> dists(static_cast<std::size_t>(n - 1));
    for (int t = 0; t < options.n_tasks; ++t) {
        if (t > 0 && t % n == 0) rng.shuffle(order);
        const int target = order[static_cast<std::size_t>(t % n)];
        const Location& loc = data.locations[static_cast<std::size_t>(target)];
        std::size_t m = 0;
        for (int j = 0; j < n; ++j) {
            if (j == target) continue;
            dists[m++] = pairwise_distance(loc, data.locations[static_cast<std::size_t>(j)]);
        }
        std::sort(dists.begin(), dists.end());
        // Any u below the (max_excluded+1)-th smallest distance keeps the
        // training fraction: at most max_excluded observations fall inside.
        const double r_max = dists[static_cast<std::size_t>(max_excluded)];
        const double u = rng.uniform(0.0, r_max);

        ValidationTask task;
        task.task_id = t;
        task.target_index = target;
        for (int j = 0; j < n; ++j) {
            if (j == target) continue;
            if (pairwise_distance(loc, data.locations[static_cast<std::size_t>(j)]) > u) {
                task.train_indices.push_back(j);
            }
        }
        if (task.train_indices.empty()) {
            throw std::runtime_error("buffered loo: all observations co-located with the target");
        }
        task.descriptor = make_descriptor(data, target, task.train_indices);
        set.tasks.push_back(std::move(task));
        set.buffer_radii.push_back(u);
    }
    return set;
}

}  // namespace twcv
