#include "twcv/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "twcv/distance.hpp"

namespace twcv {

SamplingDesign parse_design(const std::string& name) {
    if (name == "random") return SamplingDesign::kRandom;
    if (name == "clustered") return SamplingDesign::kClustered;
    if (name == "biased") return SamplingDesign::kBiased;
    throw std::invalid_argument("unknown design '" + name +
                                "' (valid: random, clustered, biased)");
}

std::string design_name(SamplingDesign design) {
    switch (design) {
        case SamplingDesign::kRandom: return "random";
        case SamplingDesign::kClustered: return "clustered";
        case SamplingDesign::kBiased: return "biased";
    }
    return "random";
}

void ScenarioConfig::validate() const {
    if (n <= 0) throw std::invalid_argument("sample size must be positive");
    if (grid_side < 10) throw std::invalid_argument("grid_side must be at least 10");
    if (!(rho > 0.0)) throw std::invalid_argument("rho must be positive");
    if (n > grid_side * grid_side) {
        throw std::invalid_argument("sample size exceeds the number of grid nodes");
    }
}

std::vector<std::string> World::covariate_names() const {
    if (has_extra_predictors) return {"x1", "x2", "x3", "x4"};
    return {"x1", "x2"};
}

std::vector<std::vector<double>> World::covariate_rows() const {
    std::vector<std::vector<double>> rows;
    rows.reserve(size());
    for (std::size_t i = 0; i < size(); ++i) {
        if (has_extra_predictors) {
            rows.push_back({x1[i], x2[i], x3[i], x4[i]});
        } else {
            rows.push_back({x1[i], x2[i]});
        }
    }
    return rows;
}

double residual_sd(const Location& s) { return std::sqrt(0.4 + 1.2 * s.x); }

CovarianceSpec predictor_field_spec() { return CovarianceSpec{0.2, 1.0}; }

namespace {

std::vector<Location> make_grid(int side) {
    std::vector<Location> grid;
    grid.reserve(static_cast<std::size_t>(side) * static_cast<std::size_t>(side));
    const double step = 1.0 / static_cast<double>(side - 1);
    for (int iy = 0; iy < side; ++iy) {
        for (int ix = 0; ix < side; ++ix) {
            grid.push_back({ix * step, iy * step});
        }
    }
    return grid;
}

double reflect_into_unit(double v) {
    // Reflect at 0 and 1 until inside [0, 1].
    while (v < 0.0 || v > 1.0) {
        if (v < 0.0) v = -v;
        if (v > 1.0) v = 2.0 - v;
    }
    return v;
}

}  // namespace

WorldFactory::WorldFactory(const ScenarioConfig& cfg) : cfg_(cfg), grid_(make_grid(cfg.grid_side)) {
    cfg_.validate();
    predictor_field_ = cached_grf_simulator(grid_, predictor_field_spec());
    residual_field_ = cached_grf_simulator(grid_, CovarianceSpec{cfg_.rho, 1.0});
}

World WorldFactory::make(Rng& rng) const {
    World world;
    world.grid = grid_;
    world.has_extra_predictors = cfg_.include_extra_predictors;
    const std::size_t m = grid_.size();

    world.x1.resize(m);
    world.x3.resize(m);
    for (std::size_t i = 0; i < m; ++i) {
        world.x1[i] = grid_[i].x;
        world.x3[i] = grid_[i].y;
    }
    world.x2 = predictor_field_->draw(rng);
    if (cfg_.include_extra_predictors) {
        world.x4 = predictor_field_->draw(rng);
    } else {
        world.x4.assign(m, 0.0);
    }
    const std::vector<double> eps0 = residual_field_->draw(rng);
    world.eps.resize(m);
    world.z.resize(m);
    for (std::size_t i = 0; i < m; ++i) {
        world.eps[i] = residual_sd(grid_[i]) * eps0[i];
        world.z[i] = cfg_.beta0 + cfg_.beta1 * world.x1[i] + cfg_.beta2 * world.x2[i] +
                     world.eps[i];
    }
    return world;
}

World make_world(const ScenarioConfig& cfg, Rng& rng) { return WorldFactory(cfg).make(rng); }

namespace {

/// Continuous-space sample locations for each design, before grid snapping.
std::vector<Location> draw_continuous(const ScenarioConfig& cfg, Rng& rng) {
    std::vector<Location> points;
    points.reserve(static_cast<std::size_t>(cfg.n));
    switch (cfg.design) {
        case SamplingDesign::kRandom: {
            for (int i = 0; i < cfg.n; ++i) points.push_back({rng.uniform(), rng.uniform()});
            break;
        }
        case SamplingDesign::kClustered: {
            constexpr int kClusters = 10;
            constexpr double kSpread = 0.05;
            std::vector<Location> parents;
            for (int c = 0; c < kClusters; ++c) parents.push_back({rng.uniform(), rng.uniform()});
            const int base = cfg.n / kClusters;
            const int remainder = cfg.n % kClusters;
            for (int c = 0; c < kClusters; ++c) {
                const int count = base + (c < remainder ? 1 : 0);
                for (int i = 0; i < count; ++i) {
                    points.push_back({reflect_into_unit(parents[static_cast<std::size_t>(c)].x +
                                                        kSpread * rng.normal()),
                                      reflect_into_unit(parents[static_cast<std::size_t>(c)].y +
                                                        kSpread * rng.normal())});
                }
            }
            break;
        }
        case SamplingDesign::kBiased: {
            // Preferential sampling toward the low-x1 (low-variance) end:
            // acceptance probability (1 - x)^2.
            while (points.size() < static_cast<std::size_t>(cfg.n)) {
                const Location candidate{rng.uniform(), rng.uniform()};
                const double accept = (1.0 - candidate.x) * (1.0 - candidate.x);
                if (rng.uniform() < accept) points.push_back(candidate);
            }
            break;
        }
    }
    return points;
}

}  // namespace

Dataset draw_sample(const World& world, const ScenarioConfig& cfg, Rng& rng) {
    cfg.validate();
    const std::size_t m = world.size();
    if (static_cast<std::size_t>(cfg.n) > m) {
        throw std::invalid_argument("sample size exceeds available grid nodes");
    }
    const std::vector<Location> continuous = draw_continuous(cfg, rng);

    std::vector<bool> taken(m, false);
    std::vector<std::size_t> chosen;
    chosen.reserve(continuous.size());
    for (const auto& point : continuous) {
        std::size_t best = m;
        double best_dist = std::numeric_limits<double>::infinity();
        for (std::size_t g = 0; g < m; ++g) {
            if (taken[g]) continue;
            const double d = pairwise_distance(point, world.grid[g]);
            if (d < best_dist) {
                best_dist = d;
                best = g;
            }
        }
        taken[best] = true;
        chosen.push_back(best);
    }

    Dataset data;
    data.covariate_names = world.covariate_names();
    data.locations.reserve(chosen.size());
    data.covariates.reserve(chosen.size());
    data.response.reserve(chosen.size());
    for (std::size_t g : chosen) {
        data.locations.push_back(world.grid[g]);
        if (world.has_extra_predictors) {
            data.covariates.push_back({world.x1[g], world.x2[g], world.x3[g], world.x4[g]});
        } else {
            data.covariates.push_back({world.x1[g], world.x2[g]});
        }
        data.response.push_back(world.z[g]);
    }
    data.validate();
    return data;
}

}  // namespace twcv
