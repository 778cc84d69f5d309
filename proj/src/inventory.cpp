#include "spares/inventory.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace spares::inventory {

void SQPolicy::validate() const {
    if (order_quantity_q < 1) throw std::invalid_argument("SQPolicy: Q must be >= 1");
    if (reorder_point_s < 0) throw std::invalid_argument("SQPolicy: s must be >= 0");
}

double poisson_pmf(int k, double mean) {
    if (k < 0) return 0.0;
    if (mean <= 0.0) return k == 0 ? 1.0 : 0.0;
    return std::exp(k * std::log(mean) - mean - std::lgamma(k + 1.0));
}

namespace {

// Upper-tail form sum_{k>s} (k - s) p_k, used when the mean sits at or below
// s so the tail terms shrink quickly and no cancellation occurs.
double shortage_upper_tail(int s, double m) {
    const double cap = s + 40.0 * std::sqrt(m) + 40.0;
    double p = poisson_pmf(s + 1, m);
    double total = 0.0;
    for (int k = s + 1; k <= cap; ++k) {
        const double term = (k - s) * p;
        total += term;
        if (k > m && term < 1e-15 * total) break;
        p *= m / (k + 1);
    }
    return total;
}

// Complement form E[D - s] + E[(s - D)+]: a finite sum over 0..s-1.
double shortage_complement(int s, double m) {
    double p = std::exp(-m);
    double below = 0.0;
    for (int k = 0; k < s; ++k) {
        below += (s - k) * p;
        p *= m / (k + 1);
    }
    return m - s + below;
}

}  // namespace

double expected_shortage(int s, double mean_demand) {
    if (s < 0) throw std::invalid_argument("expected_shortage: s must be >= 0");
    if (!(mean_demand >= 0.0)) throw std::invalid_argument("expected_shortage: mean demand must be >= 0");
    if (mean_demand == 0.0) return 0.0;
    if (s == 0) return mean_demand;
    // exp(-m) underflows past ~745; the complement form keeps working there.
    if (mean_demand <= s) return shortage_upper_tail(s, mean_demand);
    return std::max(0.0, shortage_complement(s, mean_demand));
}

double fill_rate(double expected_shortage, int q) {
    if (q < 1) throw std::invalid_argument("fill_rate: Q must be >= 1");
    if (expected_shortage < 0.0 || std::isnan(expected_shortage)) {
        throw std::invalid_argument("fill_rate: expected shortage must be >= 0");
    }
    const double rho = 1.0 - expected_shortage / q;
    return std::clamp(rho, 0.0, 1.0);
}

double mean_stock(const SQPolicy& policy, double expected_leadtime_demand) {
    policy.validate();
    return policy.order_quantity_q / 2.0 + policy.reorder_point_s - expected_leadtime_demand + 0.5;
}

}  // namespace spares::inventory
