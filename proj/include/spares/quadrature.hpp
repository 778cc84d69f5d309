// Fixed-order Gaussian quadrature rules.
#pragma once

#include <cstddef>
#include <vector>

namespace spares::quadrature {

struct Rule {
    std::vector<double> nodes;
    std::vector<double> weights;
};

/// Gauss-Legendre nodes/weights on [-1, 1], computed by Newton iteration.
Rule gauss_legendre(std::size_t n);

/// Gauss-Laguerre nodes/weights for the weight e^{-x} on [0, inf).
Rule gauss_laguerre(std::size_t n);

/// Cached rules at the orders used by the lead-time integrals.
const Rule& legendre32();
const Rule& laguerre64();

/// Integral of f over [lo, hi] with an n-point Legendre rule.
template <typename F>
double integrate(const Rule& legendre, double lo, double hi, F&& f) {
    const double half = 0.5 * (hi - lo);
    const double mid = 0.5 * (hi + lo);
    double acc = 0.0;
    for (std::size_t k = 0; k < legendre.nodes.size(); ++k) {
        acc += legendre.weights[k] * f(mid + half * legendre.nodes[k]);
    }
    return acc * half;
}

}  // namespace spares::quadrature
