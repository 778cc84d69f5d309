// (s,Q) continuous-review analytics under Poisson demand.
#pragma once

namespace spares::inventory {

/// Reorder point s and order quantity Q, in whatever unit the echelon counts
/// (satellites in-plane, Q_plane-sized batches at a parking orbit).
struct SQPolicy {
    int reorder_point_s = 0;
    int order_quantity_q = 1;

    /// Throws std::invalid_argument unless q >= 1 and s >= 0.
    void validate() const;
};

/// Poisson demand process.
struct DemandLaw {
    double rate_per_day = 0.0;

    double mean_over(double days) const { return rate_per_day * days; }
};

/// Poisson probability mass P(D = k) for mean `mean`.
double poisson_pmf(int k, double mean);

/// E[(D - s)+] for D ~ Poisson(mean_demand): expected units backordered
/// in one replenishment cycle whose lead-time demand has that mean.
double expected_shortage(int s, double mean_demand);

/// Order fill rate 1 - ES/Q clamped to [0, 1]. Throws for ES < 0 or q < 1.
double fill_rate(double expected_shortage, int q);

/// Mean on-hand stock Q/2 + s - E[N_fail(tau)] + 1/2 (continuity corrected).
/// May be negative for policies with heavy backordering.
double mean_stock(const SQPolicy& policy, double expected_leadtime_demand);

}  // namespace spares::inventory
