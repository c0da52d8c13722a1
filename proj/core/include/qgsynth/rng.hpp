#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>

namespace qgsynth {

/// Seedable counter-style 64-bit generator (SplitMix64 core) with the handful
/// of distributions the simulators and synthesizer need.
///
/// The seed -> output mapping is fixed by this implementation and must not
/// change between releases: serialized corpora are reproduced from seeds alone.
/// Streams for replicas/repeats are split with `derive`, which hashes
/// (seed, stream) through the same finalizer.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_u64() {
        state_ += 0x9E3779B97F4A7C15ULL;
        std::uint64_t z = state_;
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    /// Uniform on [0, 1), 53-bit resolution.
    double next_double() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    /// Uniform on the half-open interval (lo, hi]; returns hi when lo == hi.
    double uniform_left_open(double lo, double hi) {
        if (lo == hi) return hi;
        return hi - next_double() * (hi - lo);
    }

    /// Standard normal via Box-Muller; the sine partner is cached.
    double normal() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        const double u1 = 1.0 - next_double();  // (0, 1]
        const double u2 = next_double();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double a = 2.0 * std::numbers::pi * u2;
        spare_ = r * std::sin(a);
        have_spare_ = true;
        return r * std::cos(a);
    }

    /// Poisson by Knuth's product method; adequate for the small rates used here.
    long poisson(double lambda) {
        const double limit = std::exp(-lambda);
        long k = 0;
        double p = 1.0;
        do {
            ++k;
            p *= next_double();
        } while (p > limit);
        return k - 1;
    }

    /// Binomial(n, p) as a sum of Bernoulli draws.
    long binomial(long n, double p) {
        long s = 0;
        for (long i = 0; i < n; ++i)
            if (next_double() < p) ++s;
        return s;
    }

    /// Derived stream seed for replica/repeat `stream`.
    static std::uint64_t derive(std::uint64_t seed, std::uint64_t stream) {
        return mix(seed ^ mix(stream + 0x9E3779B97F4A7C15ULL));
    }

  private:
    static std::uint64_t mix(std::uint64_t z) {
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    std::uint64_t state_;
    double spare_ = 0.0;
    bool have_spare_ = false;
};

}  // namespace qgsynth
