#include "spares/quadrature.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace spares::quadrature {

namespace {

constexpr int kMaxNewton = 100;

}  // namespace

Rule gauss_legendre(std::size_t n) {
    if (n == 0) throw std::invalid_argument("gauss_legendre: n must be >= 1");
    Rule rule;
    rule.nodes.resize(n);
    rule.weights.resize(n);
    const std::size_t m = (n + 1) / 2;
    for (std::size_t i = 0; i < m; ++i) {
        double z = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
        double dp = 0.0;
        for (int it = 0; it < kMaxNewton; ++it) {
            double p1 = 1.0, p2 = 0.0;
            for (std::size_t j = 1; j <= n; ++j) {
                const double p3 = p2;
                p2 = p1;
                p1 = ((2.0 * j - 1.0) * z * p2 - (j - 1.0) * p3) / j;
            }
            dp = n * (z * p1 - p2) / (z * z - 1.0);
            const double z_prev = z;
            z = z_prev - p1 / dp;
            if (std::abs(z - z_prev) < 1e-15) break;
        }
        // Recompute the derivative at the converged node.
        double p1 = 1.0, p2 = 0.0;
        for (std::size_t j = 1; j <= n; ++j) {
            const double p3 = p2;
            p2 = p1;
            p1 = ((2.0 * j - 1.0) * z * p2 - (j - 1.0) * p3) / j;
        }
        dp = n * (z * p1 - p2) / (z * z - 1.0);
        const double w = 2.0 / ((1.0 - z * z) * dp * dp);
        rule.nodes[i] = -z;
        rule.nodes[n - 1 - i] = z;
        rule.weights[i] = w;
        rule.weights[n - 1 - i] = w;
    }
    if (n % 2 == 1) rule.nodes[n / 2] = 0.0;
    return rule;
}

Rule gauss_laguerre(std::size_t n) {
    if (n == 0) throw std::invalid_argument("gauss_laguerre: n must be >= 1");
    Rule rule;
    rule.nodes.resize(n);
    rule.weights.resize(n);
    const double nd = static_cast<double>(n);
    double z = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        // Initial guesses for the smallest roots, then extrapolation from the
        // two previous ones.
        if (i == 0) {
            z = 3.0 / (1.0 + 2.4 * nd);
        } else if (i == 1) {
            z += 15.0 / (1.0 + 2.5 * nd);
        } else {
            const double ai = i - 1.0;
            z += (1.0 + 2.55 * ai) / (1.9 * ai) * (z - rule.nodes[i - 2]);
        }
        double p1 = 0.0, p2 = 0.0, pp = 0.0;
        for (int it = 0; it < kMaxNewton; ++it) {
            p1 = 1.0;
            p2 = 0.0;
            for (std::size_t j = 1; j <= n; ++j) {
                const double p3 = p2;
                p2 = p1;
                p1 = ((2.0 * j - 1.0 - z) * p2 - (j - 1.0) * p3) / j;
            }
            pp = nd * (p1 - p2) / z;
            const double z_prev = z;
            z = z_prev - p1 / pp;
            if (std::abs(z - z_prev) <= 1e-14 * std::abs(z)) break;
        }
        p1 = 1.0;
        p2 = 0.0;
        for (std::size_t j = 1; j <= n; ++j) {
            const double p3 = p2;
            p2 = p1;
            p1 = ((2.0 * j - 1.0 - z) * p2 - (j - 1.0) * p3) / j;
        }
        // w_i = x_i / ((n+1)^2 L_{n+1}(x_i)^2); L_{n+1}(x_i) = -n L_{n-1}(x_i) / (n+1).
        rule.nodes[i] = z;
        rule.weights[i] = z / (nd * nd * p2 * p2);
    }
    return rule;
}

const Rule& legendre32() {
    static const Rule rule = gauss_legendre(32);
    return rule;
}

const Rule& laguerre64() {
    static const Rule rule = gauss_laguerre(64);
    return rule;
}

}  // namespace spares::quadrature
