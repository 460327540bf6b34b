#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace efacies {

/// Seeded generator with output fixed across standard libraries.
///
/// Raw bits come from std::mt19937_64, whose sequence the C++ standard pins.
/// Uniform and normal variates are derived here (53-bit mantissa fill and the
/// Marsaglia polar method) instead of through <random> distributions, whose
/// algorithms are implementation-defined.
class Rng {
  public:
    static constexpr const char* algorithm = "mt19937_64+polar/v1";

    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t bits() { return engine_(); }

    /// Uniform on [0, 1).
    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    /// Uniform integer in [0, n), unbiased by rejection.
    std::uint64_t index(std::uint64_t n) {
        const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
        std::uint64_t r;
        do {
            r = engine_();
        } while (r >= limit);
        return r % n;
    }

    double normal() {
        if (has_spare_) {
            has_spare_ = false;
            return spare_;
        }
        double u, v, s;
        do {
            u = 2.0 * uniform() - 1.0;
            v = 2.0 * uniform() - 1.0;
            s = u * u + v * v;
        } while (s >= 1.0 || s == 0.0);
        const double f = std::sqrt(-2.0 * std::log(s) / s);
        spare_ = v * f;
        has_spare_ = true;
        return u * f;
    }

    double normal(double mean, double stddev) { return mean + stddev * normal(); }

    /// Trials until first success, support {1, 2, ...}, mean 1/p.
    std::uint64_t geometric(double p) {
        if (p >= 1.0) return 1;
        const double u = 1.0 - uniform();  // (0, 1]
        return 1 + static_cast<std::uint64_t>(std::floor(std::log(u) / std::log1p(-p)));
    }

  private:
    std::mt19937_64 engine_;
    double spare_ = 0.0;
    bool has_spare_ = false;
};

}  // namespace efacies
