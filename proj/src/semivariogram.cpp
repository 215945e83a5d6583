#include "twcv/semivariogram.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "twcv/distance.hpp"

namespace twcv {

double SemivariogramModel::value(double h) const {
    if (h <= 0.0) return 0.0;
    return nugget + partial_sill * (1.0 - std::exp(-h / range));
}

double SemivariogramModel::covariance(double h) const {
    if (h <= 0.0) return partial_sill + nugget;
    return partial_sill * std::exp(-h / range);
}

EmpiricalSemivariogram cressie_semivariogram(const std::vector<double>& residuals,
                                             const std::vector<Location>& locations,
                                             double max_lag, int n_bins) {
    const std::size_t n = residuals.size();
    if (n != locations.size()) throw std::invalid_argument("residual/location size mismatch");
    if (n < 10) throw std::invalid_argument("semivariogram needs at least 10 observations");
    if (n_bins < 1) throw std::invalid_argument("need at least one lag bin");

    if (max_lag <= 0.0) {
        double max_dist = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = i + 1; j < n; ++j) {
                max_dist = std::max(max_dist, pairwise_distance(locations[i], locations[j]));
            }
        }
        max_lag = 0.5 * max_dist;
    }
    if (!(max_lag > 0.0)) throw std::runtime_error("no pairs within a positive lag range");

    const auto bins = static_cast<std::size_t>(n_bins);
    const double width = max_lag / static_cast<double>(n_bins);
    std::vector<double> root_sum(bins, 0.0);
    std::vector<std::size_t> count(bins, 0);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            const double h = pairwise_distance(locations[i], locations[j]);
            if (h <= 0.0 || h > max_lag) continue;
            auto b = static_cast<std::size_t>(h / width);
            if (b >= bins) b = bins - 1;  // h == max_lag edge
            root_sum[b] += std::sqrt(std::abs(residuals[i] - residuals[j]));
            count[b]++;
        }
    }

    EmpiricalSemivariogram emp;
    for (std::size_t b = 0; b < bins; ++b) {
        if (count[b] == 0) continue;
        const double mean_root = root_sum[b] / static_cast<double>(count[b]);
        const double fourth = mean_root * mean_root * mean_root * mean_root;
        const double correction = 0.457 + 0.494 / static_cast<double>(count[b]);
        emp.lag.push_back((static_cast<double>(b) + 0.5) * width);
        emp.gamma.push_back(0.5 * fourth / correction);
        emp.pairs.push_back(count[b]);
    }
    if (emp.size() == 0) throw std::runtime_error("no pairs within max_lag");
    return emp;
}

namespace {

struct LinearPart {
    double nugget = 0.0;
    double psill = 0.0;
};

/// Weighted least squares for (nugget, psill) at a fixed range, with
/// nonnegativity enforced by solving the reduced problems on the boundary.
LinearPart profile_linear(const EmpiricalSemivariogram& emp, const std::vector<double>& w,
                          double range) {
    const std::size_t m = emp.size();
    double s11 = 0.0, s12 = 0.0, s22 = 0.0, b1 = 0.0, b2 = 0.0;
    for (std::size_t j = 0; j < m; ++j) {
        const double basis = 1.0 - std::exp(-emp.lag[j] / range);
        s11 += w[j];
        s12 += w[j] * basis;
        s22 += w[j] * basis * basis;
        b1 += w[j] * emp.gamma[j];
        b2 += w[j] * emp.gamma[j] * basis;
    }
    const double det = s11 * s22 - s12 * s12;
    LinearPart part;
    if (std::abs(det) > 1e-300) {
        part.nugget = (b1 * s22 - b2 * s12) / det;
        part.psill = (s11 * b2 - s12 * b1) / det;
    }
    if (part.nugget < 0.0 || part.psill < 0.0 || std::abs(det) <= 1e-300) {
        // Project: try nugget = 0, then psill = 0, keep the better fit.
        const double psill_only = s22 > 0.0 ? std::max(b2 / s22, 0.0) : 0.0;
        const double nugget_only = s11 > 0.0 ? std::max(b1 / s11, 0.0) : 0.0;
        double sse_psill = 0.0, sse_nugget = 0.0;
        for (std::size_t j = 0; j < m; ++j) {
            const double basis = 1.0 - std::exp(-emp.lag[j] / range);
            const double e1 = emp.gamma[j] - psill_only * basis;
            const double e2 = emp.gamma[j] - nugget_only;
            sse_psill += w[j] * e1 * e1;
            sse_nugget += w[j] * e2 * e2;
        }
        if (sse_psill <= sse_nugget) {
            part.nugget = 0.0;
            part.psill = psill_only;
        } else {
            part.nugget = nugget_only;
            part.psill = 0.0;
        }
    }
    return part;
}

double weighted_sse(const EmpiricalSemivariogram& emp, const std::vector<double>& w,
                    const SemivariogramModel& model) {
    double sse = 0.0;
    for (std::size_t j = 0; j < emp.size(); ++j) {
        const double e = emp.gamma[j] - model.value(emp.lag[j]);
        sse += w[j] * e * e;
    }
    return sse;
}

}  // namespace

SvgmFit fit_exponential_svgm(const EmpiricalSemivariogram& emp) {
    const std::size_t m = emp.size();
    if (m < 3) throw std::invalid_argument("semivariogram fit needs at least 3 bins");

    std::vector<double> w(m);
    for (std::size_t j = 0; j < m; ++j) {
        w[j] = static_cast<double>(emp.pairs[j]) / (emp.lag[j] * emp.lag[j]);
    }
    const double max_lag = emp.lag.back();
    const double gamma_max = *std::max_element(emp.gamma.begin(), emp.gamma.end());

    SemivariogramModel model;
    model.nugget = std::max(emp.gamma.front(), 0.0);
    model.partial_sill = std::max(gamma_max - model.nugget, 1e-6);
    model.range = max_lag / 3.0;

    const double range_lo = max_lag * 1e-4;
    const double range_hi = max_lag * 100.0;
    constexpr double kTol = 1e-8;
    constexpr int kMaxIter = 200;

    SvgmFit fit;
    double sse = weighted_sse(emp, w, model);
    int iter = 0;
    for (; iter < kMaxIter; ++iter) {
        const SemivariogramModel previous = model;

        const LinearPart part = profile_linear(emp, w, model.range);
        model.nugget = part.nugget;
        model.partial_sill = part.psill;

        if (model.partial_sill > 0.0) {
            // Damped Gauss-Newton step on the range.
            double num = 0.0, den = 0.0;
            for (std::size_t j = 0; j < m; ++j) {
                const double expterm = std::exp(-emp.lag[j] / model.range);
                const double jac =
                    -model.partial_sill * emp.lag[j] / (model.range * model.range) * expterm;
                const double resid = emp.gamma[j] - model.value(emp.lag[j]);
                num += w[j] * jac * resid;
                den += w[j] * jac * jac;
            }
            if (den > 0.0) {
                double step = num / den;
                for (int halving = 0; halving < 30; ++halving) {
                    SemivariogramModel trial = model;
                    trial.range = std::clamp(model.range + step, range_lo, range_hi);
                    const double trial_sse = weighted_sse(emp, w, trial);
                    if (trial_sse <= sse + 1e-30) {
                        model = trial;
                        break;
                    }
                    step *= 0.5;
                }
            }
        }
        sse = weighted_sse(emp, w, model);

        const double change = std::abs(model.nugget - previous.nugget) +
                              std::abs(model.partial_sill - previous.partial_sill) +
                              std::abs(model.range - previous.range);
        if (change < kTol) {
            fit.converged = true;
            break;
        }
    }

    fit.model = model;
    fit.weighted_sse = sse;
    fit.range_identifiable = model.partial_sill > 1e-8 * std::max(gamma_max, 1e-12);
    return fit;
}

}  // namespace twcv
