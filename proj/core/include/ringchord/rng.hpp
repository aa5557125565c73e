#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace ringchord {

// Randomness policy: std::mt19937_64 as the engine (its output sequence is
// fixed by the standard), all distributions hand-rolled below. The standard
// library distributions are implementation-defined, which would break the
// byte-identical-output guarantees of the campaign runner.

/// SplitMix64 mixing function, used to derive child seeds.
inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

/// Seed of substream `index` of a master stream. Trials, paths and any
/// other parallel units each get their own substream so results do not
/// depend on worker count or scheduling.
inline std::uint64_t substream_seed(std::uint64_t master, std::uint64_t index) {
    return splitmix64(master ^ splitmix64(index + 1));
}

/// Uniform double in [0, 1) with 53 random bits.
inline double uniform01(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

/// Uniform double in [lo, hi).
inline double uniform_real(std::mt19937_64& rng, double lo, double hi) {
    return lo + (hi - lo) * uniform01(rng);
}

/// Unbiased uniform integer in [0, bound) by rejection.
inline std::uint64_t uniform_index(std::mt19937_64& rng, std::uint64_t bound) {
    const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % bound;
    std::uint64_t x;
    do {
        x = rng();
    } while (x >= limit);
    return x % bound;
}

/// One standard normal draw (Box-Muller, second value cached).
class NormalSampler {
public:
    explicit NormalSampler(std::mt19937_64& rng) : rng_(rng) {}

    double operator()() {
        if (has_spare_) {
            has_spare_ = false;
            return spare_;
        }
        double u1 = uniform01(rng_);
        while (u1 <= 0.0) u1 = uniform01(rng_);
        const double u2 = uniform01(rng_);
        const double mag = std::sqrt(-2.0 * std::log(u1));
        spare_ = mag * std::sin(2.0 * M_PI * u2);
        has_spare_ = true;
        return mag * std::cos(2.0 * M_PI * u2);
    }

private:
    std::mt19937_64& rng_;
    double spare_ = 0.0;
    bool has_spare_ = false;
};

} // namespace ringchord
