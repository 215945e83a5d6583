#include "twcv/kmeans.hpp"

#include <cmath>
#include <limits>
#include <set>
#include <stdexcept>

#include "twcv/rng.hpp"

namespace twcv {
namespace {

double sq_dist(const Location& a, const Location& b) {
    const double dx = a.x - b.x, dy = a.y - b.y;
    return dx * dx + dy * dy;
}

KMeansResult lloyd_once(const std::vector<Location>& points, int k, Rng& rng) {
    const std::size_t n = points.size();
    std::vector<Location> centroids;
    centroids.reserve(static_cast<std::size_t>(k));

    // k-means++ seeding.
    centroids.push_back(points[rng.uniform_index(n)]);
    std::vector<double> dist_sq(n);
    while (centroids.size() < static_cast<std::size_t>(k)) {
        double total = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            double best = std::numeric_limits<double>::infinity();
            for (const auto& c : centroids) best = std::min(best, sq_dist(points[i], c));
            dist_sq[i] = best;
            total += best;
        }
        if (total <= 0.0) {
            // All remaining mass on existing centroids: pick any point.
            centroids.push_back(points[rng.uniform_index(n)]);
            continue;
        }
        double target = rng.uniform() * total;
        std::size_t chosen = n - 1;
        for (std::size_t i = 0; i < n; ++i) {
            target -= dist_sq[i];
            if (target <= 0.0) {
                chosen = i;
                break;
            }
        }
        centroids.push_back(points[chosen]);
    }

    std::vector<int> assignment(n, 0);
    for (int round = 0; round < 200; ++round) {
        bool changed = false;
        for (std::size_t i = 0; i < n; ++i) {
            double best = std::numeric_limits<double>::infinity();
            int best_c = 0;
            for (int c = 0; c < k; ++c) {
                const double d = sq_dist(points[i], centroids[static_cast<std::size_t>(c)]);
                if (d < best) {
                    best = d;
                    best_c = c;
                }
            }
            if (assignment[i] != best_c) {
                assignment[i] = best_c;
                changed = true;
            }
        }
        std::vector<double> sx(static_cast<std::size_t>(k), 0.0), sy(static_cast<std::size_t>(k), 0.0);
        std::vector<int> count(static_cast<std::size_t>(k), 0);
        for (std::size_t i = 0; i < n; ++i) {
            const auto c = static_cast<std::size_t>(assignment[i]);
            sx[c] += points[i].x;
            sy[c] += points[i].y;
            count[c]++;
        }
        for (int c = 0; c < k; ++c) {
            const auto ci = static_cast<std::size_t>(c);
            if (count[ci] == 0) {
                // Re-seed an empty cluster at the point farthest from its centroid.
                double worst = -1.0;
                std::size_t pick = 0;
                for (std::size_t i = 0; i < n; ++i) {
                    const double d =
                        sq_dist(points[i], centroids[static_cast<std::size_t>(assignment[i])]);
                    if (d > worst) {
                        worst = d;
                        pick = i;
                    }
                }
                centroids[ci] = points[pick];
                changed = true;
            } else {
                centroids[ci] = {sx[ci] / count[ci], sy[ci] / count[ci]};
            }
        }
        if (!changed && round > 0) break;
    }

    KMeansResult result;
    result.assignment = std::move(assignment);
    result.centroids = std::move(centroids);
    for (std::size_t i = 0; i < n; ++i) {
        result.within_ss +=
            sq_dist(points[i], result.centroids[static_cast<std::size_t>(result.assignment[i])]);
    }
    return result;
}

}  // namespace

KMeansResult kmeans(const std::vector<Location>& points, int k, int restarts,
                    std::uint64_t seed) {
    if (k < 1) throw std::invalid_argument("k must be positive");
    std::set<std::pair<double, double>> distinct;
    for (const auto& p : points) distinct.insert({p.x, p.y});
    if (distinct.size() < static_cast<std::size_t>(k)) {
        throw std::invalid_argument("fewer distinct locations than clusters");
    }
    KMeansResult best;
    best.within_ss = std::numeric_limits<double>::infinity();
    for (int r = 0; r < restarts; ++r) {
        Rng rng(derive_seed(seed, static_cast<std::uint64_t>(r)));
        KMeansResult candidate = lloyd_once(points, k, rng);
        if (candidate.within_ss < best.within_ss) best = std::move(candidate);
    }
    return best;
}

}  // namespace twcv
