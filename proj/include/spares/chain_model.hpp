// Analytic model of the ground -> parking orbits -> constellation planes
// spare supply chain. Everything here is a pure function of its inputs.
#pragma once

#include <vector>

#include "spares/inventory.hpp"
#include "spares/lead_time.hpp"
#include "spares/orbits.hpp"

namespace spares {

struct ConstellationConfig {
    double h_plane_km = 1200.0;
    double inclination_deg = 50.0;
    int n_plane = 40;
    int n_sats = 40;
    double lambda_sat_per_year = 0.05;
    double n_days_per_year = 365.0;

    void validate() const;
    orbits::CircularOrbit plane_orbit() const { return {h_plane_km, inclination_deg}; }

    friend bool operator==(const ConstellationConfig&, const ConstellationConfig&) = default;
};

/// Decision vector [N_parking, h_parking, Q_plane, s_plane, k_Q, k_s].
/// Parking quantities are in units of Q_plane-sized batches.
struct SpareStrategy {
    int n_parking = 1;
    double h_parking_km = 800.0;
    int q_plane = 1;
    int s_plane = 1;
    int k_q_parking = 1;
    int k_s_parking = 1;

    int q_parking_sats() const { return k_q_parking * q_plane; }
    int s_parking_sats() const { return k_s_parking * q_plane; }

    /// Checks the design-variable bounds (1..20 parking orbits, 700..1000 km,
    /// 1..10 for the four stock integers) and h_parking < h_plane.
    void validate(const ConstellationConfig& cfg) const;

    orbits::CircularOrbit parking_orbit(const ConstellationConfig& cfg) const {
        return {h_parking_km, cfg.inclination_deg};
    }

    friend bool operator==(const SpareStrategy&, const SpareStrategy&) = default;
};

struct LaunchParams {
    double mu_launch_days = 66.7;
    double pt_launch_days = 90.0;
    int cap_launch = 34;

    void validate() const;

    friend bool operator==(const LaunchParams&, const LaunchParams&) = default;
};

struct SatelliteParams {
    double m_dry_kg = 150.0;
    double v_exhaust_km_s = 2.16;

    void validate() const;
};

struct PolicyMetrics {
    double lambda_plane_per_day = 0.0;
    double lambda_parking_batches_per_day = 0.0;
    double p_av = 1.0;
    double es_plane = 0.0;
    double es_parking_batches = 0.0;
    double rho_plane = 1.0;
    double rho_parking = 1.0;
    double mean_stock_plane = 0.0;
    double mean_stock_parking_batches = 0.0;

    double mean_leadtime_plane_days = 0.0;
    double mean_leadtime_parking_days = 0.0;
    /// Probability that every parking orbit is stocked out, dropped when the
    /// supply probabilities are renormalized.
    double neglected_supply_mass = 0.0;
    /// False when N_plane < 20 and the Poisson superposition at the parking
    /// orbits is only a rough approximation.
    bool superposition_valid = true;

    /// rho_plane^N_plane * rho_parking^N_parking.
    double fill_rate_product(int n_plane, int n_parking) const;
};

double plane_demand_rate(const ConstellationConfig& cfg);
double parking_demand_rate(const ConstellationConfig& cfg, const SpareStrategy& strategy);
bool superposition_valid(const ConstellationConfig& cfg);

LeadTimeDistribution parking_leadtime(const LaunchParams& lp);

/// Expected backordered batches per parking replenishment cycle.
double parking_expected_shortage(const ConstellationConfig& cfg, const SpareStrategy& strategy,
                                 const LaunchParams& lp);

/// P_av = 1 - ES_parking / k_Q. Throws outside 0 <= ES <= k_Q.
double parking_availability(double es_parking, int k_q);

/// Raw probabilities of being supplied by the i-th closest parking orbit,
/// i = 1..n. Their sum is 1 - (1 - p_av)^n. Throws if p_av is not in (0, 1].
std::vector<double> supply_probabilities_raw(double p_av, int n_parking);

/// Raw probabilities renormalized to sum to one.
std::vector<double> supply_probabilities(double p_av, int n_parking);

/// Mixture of N_parking uniform segments of transfer times weighted by the
/// supply probabilities.
LeadTimeDistribution plane_leadtime(const ConstellationConfig& cfg, const SpareStrategy& strategy,
                                    double p_av, const orbits::EarthConstants& earth = {});

double plane_expected_shortage(const ConstellationConfig& cfg, const SpareStrategy& strategy,
                               const LeadTimeDistribution& leadtime);

double plane_fill_rate(double es_plane, const SpareStrategy& strategy);
double parking_fill_rate(double es_parking, const SpareStrategy& strategy);

/// Mean in-plane stock (satellites), integrated over the lead-time law.
double plane_mean_stock(const ConstellationConfig& cfg, const SpareStrategy& strategy,
                        const LeadTimeDistribution& leadtime);
/// Mean parking stock (batches), integrated over the lead-time law.
double parking_mean_stock(const ConstellationConfig& cfg, const SpareStrategy& strategy,
                          const LeadTimeDistribution& leadtime);

/// Feed-forward evaluation: plane demand -> parking demand -> parking
/// echelon -> P_av -> supply probabilities -> plane echelon.
PolicyMetrics evaluate_strategy(const ConstellationConfig& cfg, const SpareStrategy& strategy,
                                const LaunchParams& lp, const orbits::EarthConstants& earth = {});

/// Baseline with in-plane spares only, resupplied straight from the ground.
/// Throws std::invalid_argument when Q exceeds the launch capacity.
PolicyMetrics evaluate_inplane_only(const ConstellationConfig& cfg,
                                    const inventory::SQPolicy& policy, const LaunchParams& lp);

}  // namespace spares
