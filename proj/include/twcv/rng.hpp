#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <utility>
#include <vector>

namespace twcv {

/// splitmix64 step; used both as a mixer and for seed derivation.
inline std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

/// Deterministically derives a child seed from a parent seed and a tag
/// sequence. Independent of call order elsewhere, so parallel units can
/// derive their streams up front.
inline std::uint64_t derive_seed(std::uint64_t parent, std::uint64_t tag) {
    std::uint64_t s = parent ^ 0x6a09e667f3bcc909ULL;
    splitmix64(s);
    s ^= tag * 0x9e3779b97f4a7c15ULL;
    return splitmix64(s);
}

template <typename... Tags>
std::uint64_t derive_seed(std::uint64_t parent, std::uint64_t tag, Tags... rest) {
    return derive_seed(derive_seed(parent, tag), static_cast<std::uint64_t>(rest)...);
}

/// Stream tags, kept in one place so derivations never collide.
namespace stream {
inline constexpr std::uint64_t kWorld = 1;
inline constexpr std::uint64_t kSample = 2;
inline constexpr std::uint64_t kKfold = 3;
inline constexpr std::uint64_t kBlocks = 4;
inline constexpr std::uint64_t kBuffered = 5;
inline constexpr std::uint64_t kModelFit = 6;
inline constexpr std::uint64_t kReplicate = 7;
inline constexpr std::uint64_t kDeployFit = 8;
}  // namespace stream

/// mt19937_64 wrapper with explicit, implementation-independent draws.
/// All randomness in the library flows through this type.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next_u64() { return engine_(); }

    /// Uniform on [0, 1) with 53-bit resolution.
    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    /// Uniform on [lo, hi).
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    /// Uniform integer in [0, n).
    std::uint64_t uniform_index(std::uint64_t n) {
        // Rejection sampling avoids modulo bias.
        const std::uint64_t limit = n * (UINT64_MAX / n);
        std::uint64_t v;
        do {
            v = engine_();
        } while (v >= limit);
        return v % n;
    }

    /// Standard normal via Box-Muller; the spare draw is cached.
    double normal() {
        if (has_spare_) {
            has_spare_ = false;
            return spare_;
        }
        double u1 = uniform();
        while (u1 <= 0.0) u1 = uniform();
        const double u2 = uniform();
        const double radius = std::sqrt(-2.0 * std::log(u1));
        const double angle = 6.283185307179586476925286766559 * u2;
        spare_ = radius * std::sin(angle);
        has_spare_ = true;
        return radius * std::cos(angle);
    }

    template <typename T>
    void shuffle(std::vector<T>& values) {
        for (std::size_t i = values.size(); i > 1; --i) {
            std::swap(values[i - 1], values[uniform_index(i)]);
        }
    }

  private:
    std::mt19937_64 engine_;
    double spare_ = 0.0;
    bool has_spare_ = false;
};

}  // namespace twcv
