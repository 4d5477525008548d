#pragma once

#include <cstdint>

namespace manet::sim {

// xoshiro256** with splitmix64 state expansion. Small, fast, and fully
// specified here so simulation output is reproducible across standard
// libraries and platforms, which std::mt19937_64 plus std distributions
// would not guarantee.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) {
        std::uint64_t x = seed;
        for (auto& word : s_) word = splitmix64(x);
    }

    std::uint64_t next() {
        const std::uint64_t result = rotl(s_[1] * 5, 7) * 9;
        const std::uint64_t t = s_[1] << 17;
        s_[2] ^= s_[0];
        s_[3] ^= s_[1];
        s_[1] ^= s_[2];
        s_[0] ^= s_[3];
        s_[2] ^= t;
        s_[3] = rotl(s_[3], 45);
        return result;
    }

    // Uniform integer in [0, bound) without modulo bias (Lemire's method).
    std::uint32_t below(std::uint32_t bound) {
        std::uint64_t x = next() >> 32;
        std::uint64_t m = x * bound;
        std::uint32_t lo = static_cast<std::uint32_t>(m);
        if (lo < bound) {
            std::uint32_t threshold = (0u - bound) % bound;
            while (lo < threshold) {
                x = next() >> 32;
                m = x * bound;
                lo = static_cast<std::uint32_t>(m);
            }
        }
        return static_cast<std::uint32_t>(m >> 32);
    }

    // Uniform double in [0, 1) with 53 random bits.
    double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    bool bernoulli(double p) { return uniform() < p; }

    static std::uint64_t splitmix64(std::uint64_t& state) {
        std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

  private:
    static std::uint64_t rotl(std::uint64_t x, int k) {
        return (x << k) | (x >> (64 - k));
    }

    std::uint64_t s_[4];
};

// Seed for replication k of a run with the given master seed. Replication 0
// keeps the master seed, so a single replication behaves exactly like a
// plain run; later replications hash a counter-offset state, which keeps
// their streams apart regardless of how many replications run or in which
// order they execute.
inline std::uint64_t replication_seed(std::uint64_t master, int replication) {
    if (replication == 0) return master;
    std::uint64_t state =
        master + static_cast<std::uint64_t>(replication) * 0x9E3779B97F4A7C15ULL;
    return Rng::splitmix64(state);
}

}  // namespace manet::sim
