#pragma once

// Deterministic pseudo-random source: xoshiro256++ seeded through splitmix64.
// Every transform below consumes a fixed, documented number of raw draws, so
// a port that reproduces next_u64() reproduces every generated dataset byte
// for byte. <random> engines would pin the bit stream but its distributions
// are implementation-defined, which breaks cross-language replication.

#include <cmath>
#include <cstdint>

namespace scorebench {

class Rng {
public:
    explicit Rng(std::uint64_t seed) {
        // splitmix64 expansion of the seed into the four-word state
        std::uint64_t z = seed;
        for (auto& word : state_) {
            z += 0x9e3779b97f4a7c15ull;
            std::uint64_t t = z;
            t = (t ^ (t >> 30)) * 0xbf58476d1ce4e5b9ull;
            t = (t ^ (t >> 27)) * 0x94d049bb133111ebull;
            word = t ^ (t >> 31);
        }
    }

    std::uint64_t next_u64() {
        const std::uint64_t result = rotl(state_[0] + state_[3], 23) + state_[0];
        const std::uint64_t t = state_[1] << 17;
        state_[2] ^= state_[0];
        state_[3] ^= state_[1];
        state_[1] ^= state_[2];
        state_[0] ^= state_[3];
        state_[2] ^= t;
        state_[3] = rotl(state_[3], 45);
        return result;
    }

    /// Uniform on [0,1), 53-bit resolution. One draw.
    double uniform01() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    /// Uniform on [lo,hi). One draw.
    double uniform(double lo, double hi) {
        return lo + (hi - lo) * uniform01();
    }

    // Box-Muller, cosine branch only; the sine companion is discarded to keep
    // the stream layout fixed at two draws per normal.
    double normal(double mu, double sigma) {
        const double u1 = static_cast<double>((next_u64() >> 11) + 1) * 0x1.0p-53;  // (0,1]
        const double u2 = uniform01();
        const double r = std::sqrt(-2.0 * std::log(u1));
        return mu + sigma * r * std::cos(6.283185307179586476925286766559 * u2);
    }

    /// Inverse-CDF exponential with the given rate. One draw.
    double exponential(double rate) {
        return -std::log(1.0 - uniform01()) / rate;
    }

private:
    static std::uint64_t rotl(std::uint64_t x, int k) {
        return (x << k) | (x >> (64 - k));
    }

    std::uint64_t state_[4];
};

}  // namespace scorebench
