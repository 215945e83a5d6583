#include "twcv/calibration.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace twcv {
namespace {

/// Type-7 (linear interpolation) quantile of a sorted vector.
double quantile_sorted(const std::vector<double>& sorted, double p) {
    const std::size_t n = sorted.size();
    if (n == 1) return sorted[0];
    const double h = p * static_cast<double>(n - 1);
    const std::size_t lo = static_cast<std::size_t>(std::floor(h));
    const std::size_t hi = std::min(lo + 1, n - 1);
    const double frac = h - static_cast<double>(lo);
    return sorted[lo] + frac * (sorted[hi] - sorted[lo]);
}

/// Value of a balancing variable for one descriptor. "d" is the prediction
/// distance; anything else must name a covariate.
double variable_value(const TaskDescriptor& desc, const std::vector<std::string>& names,
                      const std::string& variable) {
    if (variable == "d") return desc.d;
    for (std::size_t j = 0; j < names.size(); ++j) {
        if (names[j] == variable) return desc.covariates[j];
    }
    throw std::invalid_argument("balancing variable not in descriptors: " + variable);
}

/// Right-closed bin lookup: index = number of edges strictly below value.
int bin_of(double value, const std::vector<double>& edges) {
    int idx = 0;
    for (double e : edges) {
        if (value > e) ++idx;
    }
    return idx;
}

}  // namespace

std::size_t BinningScheme::total_bins() const {
    std::size_t total = 0;
    for (const auto& v : variables) total += v.n_bins();
    return total;
}

WeightVector WeightVector::uniform(std::size_t n) {
    WeightVector w;
    w.weights.assign(n, 1.0 / static_cast<double>(n));
    return w;
}

double WeightVector::ess() const { return twcv::ess(*this); }

double WeightVector::max_relative() const {
    if (weights.empty()) return 0.0;
    return *std::max_element(weights.begin(), weights.end()) * static_cast<double>(weights.size());
}

double WeightVector::p95_relative() const {
    if (weights.empty()) return 0.0;
    std::vector<double> sorted = weights;
    std::sort(sorted.begin(), sorted.end());
    return quantile_sorted(sorted, 0.95) * static_cast<double>(weights.size());
}

BinningScheme make_bins(const TargetTaskSet& target_tasks,
                        const std::vector<std::string>& variables, int n_bins) {
    if (target_tasks.size() == 0) throw std::invalid_argument("empty target task set");
    if (n_bins < 2) throw std::invalid_argument("need at least 2 bins");
    BinningScheme scheme;
    for (const auto& var : variables) {
        std::vector<double> values;
        values.reserve(target_tasks.size());
        for (const auto& desc : target_tasks.descriptors) {
            values.push_back(variable_value(desc, target_tasks.covariate_names, var));
        }
        std::sort(values.begin(), values.end());
        std::vector<double> edges;
        for (int j = 1; j < n_bins; ++j) {
            edges.push_back(quantile_sorted(values, static_cast<double>(j) / n_bins));
        }
        edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
        if (edges.empty()) {
            scheme.dropped.push_back(var);
            continue;
        }
        scheme.variables.push_back({var, std::move(edges)});
    }
    return scheme;
}

std::vector<double> encode(const TaskDescriptor& descriptor,
                           const std::vector<std::string>& covariate_names,
                           const BinningScheme& bins) {
    std::vector<double> indicator(bins.total_bins(), 0.0);
    std::size_t offset = 0;
    for (const auto& var : bins.variables) {
        const double value = variable_value(descriptor, covariate_names, var.variable);
        if (!std::isfinite(value)) {
            throw std::invalid_argument("non-finite value for balancing variable " + var.variable);
        }
        indicator[offset + static_cast<std::size_t>(bin_of(value, var.edges))] = 1.0;
        offset += var.n_bins();
    }
    return indicator;
}

BinnedTasks assign_bins(const std::vector<TaskDescriptor>& descriptors,
                        const std::vector<std::string>& covariate_names,
                        const BinningScheme& bins) {
    BinnedTasks out;
    out.bin_index.resize(bins.variables.size());
    out.bins_per_variable.resize(bins.variables.size());
    for (std::size_t v = 0; v < bins.variables.size(); ++v) {
        const auto& var = bins.variables[v];
        out.bins_per_variable[v] = static_cast<int>(var.n_bins());
        auto& column = out.bin_index[v];
        column.reserve(descriptors.size());
        for (const auto& desc : descriptors) {
            const double value = variable_value(desc, covariate_names, var.variable);
            if (!std::isfinite(value)) {
                throw std::invalid_argument("non-finite value for balancing variable " +
                                            var.variable);
            }
            column.push_back(bin_of(value, var.edges));
        }
    }
    return out;
}

MarginVector target_margins(const TargetTaskSet& target_tasks, const BinningScheme& bins) {
    if (target_tasks.size() == 0) throw std::invalid_argument("empty target task set");
    MarginVector margins;
    margins.proportions.resize(bins.variables.size());
    for (std::size_t v = 0; v < bins.variables.size(); ++v) {
        const auto& var = bins.variables[v];
        std::vector<double> counts(var.n_bins(), 0.0);
        for (const auto& desc : target_tasks.descriptors) {
            const double value = variable_value(desc, target_tasks.covariate_names, var.variable);
            counts[static_cast<std::size_t>(bin_of(value, var.edges))] += 1.0;
        }
        const double total = static_cast<double>(target_tasks.size());
        for (auto& c : counts) c /= total;
        margins.proportions[v] = std::move(counts);
    }
    return margins;
}

namespace {

/// Collapses bin `from` into bin `into` for variable v of a working copy:
/// target margins add up and task assignments are relabelled.
void merge_bin(std::vector<int>& task_bins, std::vector<double>& margin, int from, int into) {
    margin[static_cast<std::size_t>(into)] += margin[static_cast<std::size_t>(from)];
    margin.erase(margin.begin() + from);
    for (auto& b : task_bins) {
        if (b == from) b = into;
        if (b > from) --b;
    }
}

}  // namespace

WeightVector rake(const BinnedTasks& tasks, const MarginVector& margins,
                  const RakeOptions& options, RakeDiagnostics* diagnostics) {
    const std::size_t n_vars = tasks.n_variables();
    if (margins.proportions.size() != n_vars) {
        throw std::invalid_argument("margin/task variable count mismatch");
    }
    const std::size_t n = tasks.n_tasks();
    if (n == 0) throw std::invalid_argument("no tasks to weight");

    // Working copies: coverage repair by bin merging may relabel bins.
    std::vector<std::vector<int>> bin_index = tasks.bin_index;
    std::vector<std::vector<double>> target = margins.proportions;
    int merged = 0;

    for (std::size_t v = 0; v < n_vars; ++v) {
        if (target[v].size() != static_cast<std::size_t>(tasks.bins_per_variable[v])) {
            throw std::invalid_argument("margin length mismatch for variable " + std::to_string(v));
        }
        // Coverage: every positive-margin bin needs at least one task.
        for (;;) {
            std::vector<int> counts(target[v].size(), 0);
            for (int b : bin_index[v]) counts[static_cast<std::size_t>(b)]++;
            int empty = -1;
            for (std::size_t b = 0; b < counts.size(); ++b) {
                if (counts[b] == 0 && target[v][b] > 0.0) {
                    empty = static_cast<int>(b);
                    break;
                }
            }
            if (empty < 0) break;
            if (!options.merge_empty_bins) {
                std::ostringstream msg;
                msg << "insufficient task coverage: empty bins with positive target margin:";
                for (std::size_t b = 0; b < counts.size(); ++b) {
                    if (counts[b] == 0 && target[v][b] > 0.0) {
                        msg << " variable " << v << " bin " << b;
                    }
                }
                throw std::runtime_error(msg.str());
            }
            // Nearest non-empty neighbour by bin-index distance; ties go low.
            int best = -1, best_dist = 1 << 30;
            for (std::size_t b = 0; b < counts.size(); ++b) {
                if (counts[b] == 0) continue;
                const int dist = std::abs(static_cast<int>(b) - empty);
                if (dist < best_dist) {
                    best_dist = dist;
                    best = static_cast<int>(b);
                }
            }
            if (best < 0) throw std::runtime_error("insufficient task coverage: no non-empty bins");
            merge_bin(bin_index[v], target[v], empty, best);
            ++merged;
        }
    }

    std::vector<double> w(n, 1.0 / static_cast<double>(n));
    double residual = 0.0;
    int iter = 0;
    for (; iter < options.max_iter; ++iter) {
        for (std::size_t v = 0; v < n_vars; ++v) {
            std::vector<double> current(target[v].size(), 0.0);
            for (std::size_t i = 0; i < n; ++i) {
                current[static_cast<std::size_t>(bin_index[v][i])] += w[i];
            }
            std::vector<double> factor(target[v].size(), 1.0);
            for (std::size_t b = 0; b < target[v].size(); ++b) {
                if (target[v][b] <= 0.0) {
                    factor[b] = 0.0;  // zero-margin bins rake to zero weight
                } else if (current[b] > 0.0) {
                    factor[b] = target[v][b] / current[b];
                } else {
                    throw std::runtime_error(
                        "insufficient task coverage: all weight vanished in variable " +
                        std::to_string(v) + " bin " + std::to_string(b));
                }
            }
            for (std::size_t i = 0; i < n; ++i) {
                w[i] *= factor[static_cast<std::size_t>(bin_index[v][i])];
            }
        }
        residual = 0.0;
        for (std::size_t v = 0; v < n_vars; ++v) {
            std::vector<double> current(target[v].size(), 0.0);
            for (std::size_t i = 0; i < n; ++i) {
                current[static_cast<std::size_t>(bin_index[v][i])] += w[i];
            }
            for (std::size_t b = 0; b < target[v].size(); ++b) {
                residual = std::max(residual, std::abs(current[b] - target[v][b]));
            }
        }
        if (residual < options.tol) {
            ++iter;
            break;
        }
    }
    if (diagnostics) {
        diagnostics->max_margin_residual = residual;
        diagnostics->iterations = iter;
        diagnostics->merged_bins = merged;
    }
    if (residual >= options.tol) {
        throw std::runtime_error("raking did not converge: max margin deviation " +
                                 std::to_string(residual) + " after " +
                                 std::to_string(options.max_iter) + " iterations");
    }

    const double total = std::accumulate(w.begin(), w.end(), 0.0);
    for (auto& wi : w) wi /= total;
    WeightVector out;
    out.weights = std::move(w);
    return out;
}

WeightVector shrink(const WeightVector& w, double lambda) {
    if (!(lambda >= 0.0 && lambda <= 1.0)) {
        throw std::invalid_argument("shrinkage lambda must lie in [0, 1]");
    }
    const double n = static_cast<double>(w.weights.size());
    WeightVector out;
    out.weights.reserve(w.weights.size());
    for (double wi : w.weights) out.weights.push_back((1.0 - lambda) * wi + lambda / n);
    return out;
}

double ess(const WeightVector& w) {
    double sum = 0.0, sum_sq = 0.0;
    for (double wi : w.weights) {
        sum += wi;
        sum_sq += wi * wi;
    }
    if (sum_sq <= 0.0) throw std::invalid_argument("all-zero weight vector");
    return sum * sum / sum_sq;
}

std::vector<double> collapse_weights(const TaskSet& tasks, const WeightVector& w,
                                     std::size_t n_observations) {
    if (tasks.size() != w.weights.size()) {
        throw std::invalid_argument("weights not aligned with tasks");
    }
    std::vector<double> collapsed(n_observations, 0.0);
    for (std::size_t i = 0; i < tasks.size(); ++i) {
        collapsed[static_cast<std::size_t>(tasks.tasks[i].target_index)] += w.weights[i];
    }
    return collapsed;
}

}  // namespace twcv
