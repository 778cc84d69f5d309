// Strategy optimization on the analytic model: a mixed-integer genetic
// algorithm for the multi-echelon strategy, exhaustive enumeration for the
// in-plane-only baseline, and the failure-rate sensitivity sweep.
#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "spares/chain_model.hpp"
#include "spares/cost_model.hpp"
#include "spares/orbits.hpp"

namespace spares::opt {

struct VariableBounds {
    int n_parking_lo = 1, n_parking_hi = 20;
    double h_parking_lo_km = 700.0, h_parking_hi_km = 1000.0;
    int q_plane_lo = 1, q_plane_hi = 10;
    int s_plane_lo = 1, s_plane_hi = 10;
    int k_q_lo = 1, k_q_hi = 10;
    int k_s_lo = 1, k_s_hi = 10;

    void validate() const;
    bool contains(const SpareStrategy& s) const;
};

struct GaSettings {
    int population = 60;
    int generations = 150;
    int elitism = 2;
    int tournament = 3;
    double crossover_rate = 0.8;
    double mutation_rate = 0.1;
    double h_mutation_sigma_km = 30.0;
    int restarts = 5;

    void validate() const;
};

struct OptimizationProblem {
    ConstellationConfig constellation;
    LaunchParams launch;
    CostParams costs;
    SatelliteParams satellite;
    orbits::EarthConstants earth;
    double rho_target = 0.95;
    VariableBounds bounds;
    GaSettings ga;
    /// Upper end of the reorder-point search in the in-plane-only baseline.
    int inplane_s_max = 40;

    void validate() const;
};

inline constexpr double kPenaltyWeight = 1e6;
inline constexpr double kErrorPenalty = 1e9;

struct Fitness {
    double tessac = 0.0;
    bool feasible = false;
    /// max(0, (Q_parking - cap) / cap).
    double capacity_violation = 0.0;
    /// max(0, (rho_T - product) / rho_T).
    double fill_rate_violation = 0.0;
    double fill_rate_product = 0.0;
    /// tessac + kPenaltyWeight * (sum of violations), or kErrorPenalty when
    /// the evaluation threw.
    double penalized = 0.0;
    CostBreakdown cost;
    PolicyMetrics metrics;
    std::string error;
};

Fitness fitness(const SpareStrategy& candidate, const OptimizationProblem& prob);

/// Strict ordering used for selection and ties: penalized fitness, then the
/// strategy vector compared lexicographically.
bool better(const Fitness& a, const SpareStrategy& sa, const Fitness& b, const SpareStrategy& sb);

struct TracePoint {
    int restart = 0;
    int generation = 0;
    double best = 0.0;
    double mean = 0.0;
};

struct OptimizationResult {
    bool feasible = false;
    SpareStrategy best;
    Fitness fitness;
    std::vector<TracePoint> trace;
    std::uint64_t seed = 0;
    long evaluations = 0;
    std::string message;
};

/// GA over (N_parking, h_parking, Q_plane, s_plane, k_Q, k_s). Restart r uses
/// the stream derive_seed(seed, "ga", r); the best feasible individual over all
/// restarts is returned. The result does not depend on `jobs`.
OptimizationResult optimize(const OptimizationProblem& prob, std::uint64_t seed, unsigned jobs = 0);

struct InplaneResult {
    bool feasible = false;
    inventory::SQPolicy policy{1, 1};
    CostBreakdown cost;
    PolicyMetrics metrics;
    double fill_rate_product = 0.0;
    long evaluations = 0;
    std::string message;
};

/// Exhaustive search over Q in [1, cap_launch] and s in [1, inplane_s_max]
/// requiring rho_plane^N_plane >= rho_T.
InplaneResult optimize_inplane_only(const OptimizationProblem& prob);

struct SensitivityRow {
    double lambda_sat_per_year = 0.0;
    bool ok = false;
    double tessac_multi = 0.0;
    double tessac_inplane = 0.0;
    double savings_pct = 0.0;
    SpareStrategy multi;
    inventory::SQPolicy inplane{1, 1};
    std::string error;
};

/// Re-optimizes both strategies at every failure rate. A rate whose
/// optimization fails is recorded with ok = false and the sweep continues.
std::vector<SensitivityRow> sensitivity_sweep(const OptimizationProblem& prob,
                                              const std::vector<double>& rates,
                                              std::uint64_t seed, unsigned jobs = 0);

/// (base - multi) / base * 100.
double savings_pct(double tessac_inplane, double tessac_multi);

void write_trace_csv(std::ostream& out, const std::vector<TracePoint>& trace);
/// One row per strategy that was run; either pointer may be null.
void write_result_csv(std::ostream& out, const OptimizationResult* multi,
                      const InplaneResult* inplane);
void write_sensitivity_csv(std::ostream& out, const std::vector<SensitivityRow>& rows);

}  // namespace spares::opt
