// Independent reference computations used by the unit and acceptance tests.
// None of these call into the library's numerical kernels.
#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>
#include <vector>

namespace oracle {

inline constexpr double kMu = 398600.4418;
inline constexpr double kRe = 6378.137;
inline constexpr double kJ2 = 0.00108263;

/// Nodal regression rate of a circular orbit, rad/day.
inline double drift(double h_km, double incl_deg) {
    const double a = kRe + h_km;
    const double n = std::sqrt(kMu / (a * a * a));
    const double i = incl_deg * std::numbers::pi / 180.0;
    return -1.5 * n * kJ2 * (kRe / a) * (kRe / a) * std::cos(i) * 86400.0;
}

struct Hohmann {
    double dv;
    double fuel;
    double tof_days;
};

/// Two-burn transfer from vis-viva speeds.
inline Hohmann hohmann(double h0, double h1, double m_dry, double v_ex) {
    const double a0 = kRe + h0, a1 = kRe + h1, at = 0.5 * (a0 + a1);
    const double v0 = std::sqrt(kMu / a0);
    const double v1 = std::sqrt(kMu / a1);
    const double vp = std::sqrt(kMu * (2.0 / a0 - 1.0 / at));
    const double va = std::sqrt(kMu * (2.0 / a1 - 1.0 / at));
    const double dv = (vp - v0) + (v1 - va);
    const double fuel = m_dry * (std::exp(dv / v_ex) - 1.0);
    const double tof = std::numbers::pi * std::sqrt(at * at * at / kMu) / 86400.0;
    return {dv, fuel, tof};
}

/// E[(N - s)+] for N ~ Poisson(m), by direct summation of the tail in long
/// double until the terms are negligible.
inline double shortage_tail_sum(int s, double m) {
    if (m == 0.0) return 0.0;
    long double p = std::exp(-static_cast<long double>(m));
    long double acc = 0.0L;
    const int kmax = static_cast<int>(s + m + 60.0 * std::sqrt(m) + 200.0);
    for (int k = 0; k <= kmax; ++k) {
        if (k > 0) p *= static_cast<long double>(m) / k;
        if (k > s) acc += (k - s) * p;
    }
    return static_cast<double>(acc);
}

/// Probability that the i-th closest depot (i = 1..n) is the first stocked
/// one, by enumerating every available/empty pattern (accumulated in long
/// double, so the result is correctly rounded to a few ulps).
inline std::vector<double> supply_by_enumeration(double p_av, int n) {
    std::vector<long double> acc(static_cast<std::size_t>(n), 0.0L);
    const long double p = p_av;
    for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
        long double prob = 1.0L;
        for (int j = 0; j < n; ++j) prob *= (mask >> j) & 1u ? p : 1.0L - p;
        for (int j = 0; j < n; ++j) {
            if ((mask >> j) & 1u) {
                acc[static_cast<std::size_t>(j)] += prob;
                break;
            }
        }
    }
    return {acc.begin(), acc.end()};
}

/// Monte Carlo mean of E[(Poisson(rate * T) - s)+] over lead times T drawn
/// by `draw(engine)`.
template <typename Draw>
double shortage_monte_carlo(int s, double rate, std::size_t samples, std::uint64_t seed, Draw&& draw) {
    std::mt19937_64 eng(seed);
    double acc = 0.0;
    for (std::size_t i = 0; i < samples; ++i) acc += shortage_tail_sum(s, rate * draw(eng));
    return acc / static_cast<double>(samples);
}

}  // namespace oracle
