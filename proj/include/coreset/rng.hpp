#pragma once

#include <cmath>
#include <cstdint>

// Self-contained, portable randomness. The standard library's distributions
// (std::normal_distribution, std::uniform_int_distribution) produce different
// streams on different standard libraries, which would break cross-platform
// reproducibility of seeded runs. Fixed algorithm choices, same everywhere:
//   - splitmix64 for seed mixing / derived sub-seeds
//   - xoshiro256++ as the base generator
//   - Box-Muller for Gaussians (both values used, one cached)

namespace coreset {

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ull;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
    return x ^ (x >> 31);
}

// Derive an independent sub-seed from (seed, tag). Chain for more arguments.
inline std::uint64_t sub_seed(std::uint64_t seed, std::uint64_t tag) {
    return splitmix64(seed ^ splitmix64(tag + 0x632BE59BD9B4E019ull));
}

class Rng {
  public:
    explicit Rng(std::uint64_t seed) {
        // seed the 256-bit state from a splitmix64 stream (standard practice)
        std::uint64_t x = seed;
        for (auto& w : s_) {
            x += 0x9E3779B97F4A7C15ull;
            std::uint64_t z = x;
            z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
            z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
            w = z ^ (z >> 31);
        }
    }

    std::uint64_t next() {
        const std::uint64_t result = rotl(s_[0] + s_[3], 23) + s_[0];
        const std::uint64_t t = s_[1] << 17;
        s_[2] ^= s_[0];
        s_[3] ^= s_[1];
        s_[1] ^= s_[2];
        s_[0] ^= s_[3];
        s_[2] ^= t;
        s_[3] = rotl(s_[3], 45);
        return result;
    }

    // uniform in [0, 1), 53-bit resolution
    double next_double() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    // uniform in (0, 1) strictly — safe for log()
    double next_open() { return (static_cast<double>(next() >> 11) + 0.5) * 0x1.0p-53; }

    // unbiased uniform integer in [0, bound)
    std::uint64_t next_below(std::uint64_t bound) {
        const std::uint64_t threshold = (0 - bound) % bound;  // 2^64 mod bound
        std::uint64_t x = next();
        while (x < threshold) x = next();
        return x % bound;
    }

    // standard normal via Box-Muller
    double next_gaussian() {
        if (have_cached_) {
            have_cached_ = false;
            return cached_;
        }
        const double u1 = next_open();
        const double u2 = next_double();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double a = 6.283185307179586476925286766559 * u2;  // 2*pi
        cached_ = r * std::sin(a);
        have_cached_ = true;
        return r * std::cos(a);
    }

  private:
    static std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }

    std::uint64_t s_[4];
    double cached_ = 0.0;
    bool have_cached_ = false;
};

}  // namespace coreset
