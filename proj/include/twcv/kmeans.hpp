#pragma once

#include <cstdint>
#include <vector>

#include "twcv/types.hpp"

namespace twcv {

struct KMeansResult {
    std::vector<int> assignment;       // cluster id per point
    std::vector<Location> centroids;   // k centroids
    double within_ss = 0.0;
};

/// Lloyd's algorithm on 2-D coordinates with k-means++ seeding; runs
/// `restarts` times and keeps the lowest within-cluster sum of squares.
KMeansResult kmeans(const std::vector<Location>& points, int k, int restarts,
                    std::uint64_t seed);

}  // namespace twcv
