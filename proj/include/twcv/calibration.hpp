#pragma once

#include <string>
#include <vector>

#include "twcv/taskgen.hpp"
#include "twcv/types.hpp"

namespace twcv {

/// Discretization of one balancing variable: interior edges only, so the
/// outermost bins are unbounded. Right-closed: a value equal to an edge
/// belongs to the lower bin.
struct VariableBins {
    std::string variable;  // covariate name, or "d" for prediction distance
    std::vector<double> edges;

    std::size_t n_bins() const { return edges.size() + 1; }
};

struct BinningScheme {
    std::vector<VariableBins> variables;
    /// Variables requested but dropped because they were (near-)constant in
    /// the target distribution (single bin after edge deduplication).
    std::vector<std::string> dropped;

    std::size_t total_bins() const;
};

/// Per-variable target bin proportions; each variable's proportions sum to 1.
struct MarginVector {
    std::vector<std::vector<double>> proportions;  // aligned with BinningScheme.variables
};

/// Normalized task weights (sum-to-one convention) with dispersion
/// diagnostics relative to uniform weights.
struct WeightVector {
    std::vector<double> weights;

    static WeightVector uniform(std::size_t n);

    double ess() const;           // 1 / sum(w^2) under sum-to-one weights
    double max_relative() const;  // max(w) * n
    double p95_relative() const;  // 95th percentile of w * n
};

/// Compact per-variable bin assignment for a set of tasks; the dense
/// indicator matrix g(T_i) in bin-index form.
struct BinnedTasks {
    std::vector<std::vector<int>> bin_index;  // [variable][task]
    std::vector<int> bins_per_variable;

    std::size_t n_tasks() const { return bin_index.empty() ? 0 : bin_index[0].size(); }
    std::size_t n_variables() const { return bin_index.size(); }
};

struct RakeOptions {
    double tol = 1e-8;
    int max_iter = 1000;
    /// Merge empty positive-margin bins into their nearest non-empty
    /// neighbour (recomputing margins) instead of failing.
    bool merge_empty_bins = false;
};

struct RakeDiagnostics {
    double max_margin_residual = 0.0;
    int iterations = 0;
    int merged_bins = 0;
};

/// Builds quantile bins per balancing variable from the deployment task
/// distribution. n_bins=5 gives quintile classes, 10 deciles. Duplicate
/// quantile edges collapse; variables left with a single bin are dropped.
BinningScheme make_bins(const TargetTaskSet& target_tasks,
                        const std::vector<std::string>& variables, int n_bins = 5);

/// Concatenated one-hot indicator vector over all balancing variables.
/// Values outside the target range fall into the outermost bins.
std::vector<double> encode(const TaskDescriptor& descriptor,
                           const std::vector<std::string>& covariate_names,
                           const BinningScheme& bins);

/// Bin assignment for a whole descriptor list (same clipping rules as encode).
BinnedTasks assign_bins(const std::vector<TaskDescriptor>& descriptors,
                        const std::vector<std::string>& covariate_names,
                        const BinningScheme& bins);

/// Empirical per-variable bin proportions of the deployment tasks.
MarginVector target_margins(const TargetTaskSet& target_tasks, const BinningScheme& bins);

/// Iterative proportional fitting (raking): reweights tasks so that the
/// weighted bin margins match the target margins for every variable.
/// Throws on insufficient task coverage (empty positive-margin bins, unless
/// merging is enabled) and on non-convergence.
WeightVector rake(const BinnedTasks& tasks, const MarginVector& margins,
                  const RakeOptions& options = {}, RakeDiagnostics* diagnostics = nullptr);

/// Shrinkage towards uniform weights: w_i' = (1-lambda) w_i + lambda / n.
WeightVector shrink(const WeightVector& w, double lambda);

/// Effective sample size of a weight vector (scale-invariant form).
double ess(const WeightVector& w);

/// Case-collapsed weights: per-observation sums of task weights, for task
/// sets where one observation anchors several tasks.
std::vector<double> collapse_weights(const TaskSet& tasks, const WeightVector& w,
                                     std::size_t n_observations);

}  // namespace twcv
