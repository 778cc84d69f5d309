// Reproducible random streams.
//
// Every stream is a std::mt19937_64 (bit-exact across standard libraries)
// seeded with splitmix64(master ^ splitmix64(tag) ^ splitmix64(index + 1)).
// Variates are produced by our own transforms because the std::
// distributions are implementation-defined.
#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>
#include <string_view>

namespace spares::rng {

/// One splitmix64 step applied to x.
constexpr std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

/// FNV-1a hash of a tag such as a subcommand name.
constexpr std::uint64_t hash_tag(std::string_view tag) {
    std::uint64_t h = 1469598103934665603ULL;
    for (char c : tag) {
        h ^= static_cast<unsigned char>(c);
        h *= 1099511628211ULL;
    }
    return h;
}

/// Sub-seed for (master seed, tag, index).
constexpr std::uint64_t derive_seed(std::uint64_t master, std::string_view tag, std::uint64_t index) {
    return splitmix64(master ^ splitmix64(hash_tag(tag)) ^ splitmix64(index + 1));
}

class Stream {
public:
    explicit Stream(std::uint64_t seed) : engine_(seed) {}

    /// Uniform on [0, 1) with 53 random bits.
    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    /// Uniform integer in [0, n).
    int uniform_int(int n) {
        const int k = static_cast<int>(uniform() * n);
        return k < n ? k : n - 1;
    }

    /// Uniform integer in [lo, hi].
    int uniform_int(int lo, int hi) { return lo + uniform_int(hi - lo + 1); }

    double exponential(double mean);
    double normal(double mean, double sigma);

    std::uint64_t next_u64() { return engine_(); }

private:
    std::mt19937_64 engine_;
    double spare_normal_ = 0.0;
    bool has_spare_ = false;
};

inline double Stream::exponential(double mean) { return -mean * std::log1p(-uniform()); }

/// Box-Muller; the second variate of each pair is cached.
inline double Stream::normal(double mean, double sigma) {
    if (has_spare_) {
        has_spare_ = false;
        return mean + sigma * spare_normal_;
    }
    const double u1 = 1.0 - uniform();  // (0, 1]
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double theta = 2.0 * std::numbers::pi * u2;
    spare_normal_ = r * std::sin(theta);
    has_spare_ = true;
    return mean + sigma * r * std::cos(theta);
}

}  // namespace spares::rng
