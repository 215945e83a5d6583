#include "twcv/random_field.hpp"

#include <Eigen/Cholesky>
#include <Eigen/Core>
#include <cmath>
#include <cstring>
#include <map>
#include <mutex>
#include <stdexcept>
#include <tuple>

#include "twcv/distance.hpp"

namespace twcv {

double exp_covariance(double h, const CovarianceSpec& spec) {
    if (h < 0.0) throw std::invalid_argument("negative lag distance");
    if (!(spec.range > 0.0)) throw std::invalid_argument("covariance range must be positive");
    if (!(spec.sill > 0.0)) throw std::invalid_argument("covariance sill must be positive");
    return spec.sill * std::exp(-h / spec.range);
}

struct GrfSimulator::Factor {
    Eigen::MatrixXd lower;  // L with L L^T = C (+ jitter I)
};

GrfSimulator::GrfSimulator(const std::vector<Location>& locations, const CovarianceSpec& spec)
    : n_(locations.size()) {
    if (n_ == 0) throw std::invalid_argument("no locations");
    Eigen::MatrixXd cov(n_, n_);
    for (std::size_t i = 0; i < n_; ++i) {
        cov(i, i) = spec.sill;
        for (std::size_t j = i + 1; j < n_; ++j) {
            const double c = exp_covariance(pairwise_distance(locations[i], locations[j]), spec);
            cov(i, j) = c;
            cov(j, i) = c;
        }
    }
    const double max_jitter = 1e-6 * spec.sill;
    double jitter = 0.0;
    for (;;) {
        Eigen::MatrixXd work = cov;
        if (jitter > 0.0) work.diagonal().array() += jitter;
        Eigen::LLT<Eigen::MatrixXd> llt(work);
        if (llt.info() == Eigen::Success) {
            auto factor = std::make_shared<Factor>();
            factor->lower = llt.matrixL();
            factor_ = std::move(factor);
            jitter_ = jitter;
            return;
        }
        if (jitter == 0.0) {
            jitter = 1e-10;
        } else if (jitter * 10.0 <= max_jitter) {
            jitter *= 10.0;
        } else {
            throw std::runtime_error("covariance matrix not factorizable within jitter budget");
        }
    }
}

std::vector<double> GrfSimulator::draw(Rng& rng) const {
    Eigen::VectorXd noise(n_);
    for (std::size_t i = 0; i < n_; ++i) noise(i) = rng.normal();
    Eigen::VectorXd field = factor_->lower * noise;
    return std::vector<double>(field.data(), field.data() + n_);
}

std::vector<double> simulate_grf(const std::vector<Location>& locations,
                                 const CovarianceSpec& spec, Rng& rng) {
    return GrfSimulator(locations, spec).draw(rng);
}

namespace {

std::uint64_t hash_locations(const std::vector<Location>& locations) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    auto mix = [&h](double v) {
        std::uint64_t bits;
        static_assert(sizeof(bits) == sizeof(v));
        std::memcpy(&bits, &v, sizeof(bits));
        h ^= bits;
        h *= 0x100000001b3ULL;
    };
    for (const auto& loc : locations) {
        mix(loc.x);
        mix(loc.y);
    }
    return h;
}

}  // namespace

std::shared_ptr<const GrfSimulator> cached_grf_simulator(const std::vector<Location>& locations,
                                                         const CovarianceSpec& spec) {
    using Key = std::tuple<std::uint64_t, std::size_t, double, double>;
    static std::mutex mutex;
    static std::map<Key, std::weak_ptr<const GrfSimulator>> cache;

    const Key key{hash_locations(locations), locations.size(), spec.range, spec.sill};
    {
        std::lock_guard<std::mutex> lock(mutex);
        if (auto it = cache.find(key); it != cache.end()) {
            if (auto existing = it->second.lock()) return existing;
        }
    }
    auto fresh = std::make_shared<const GrfSimulator>(locations, spec);
    std::lock_guard<std::mutex> lock(mutex);
    auto& slot = cache[key];
    if (auto existing = slot.lock()) return existing;  // lost a race; reuse theirs
    slot = fresh;
    return fresh;
}

}  // namespace twcv
