#include "spares/cost_model.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace spares {

void CostParams::validate() const {
    if (p_sat_musd < 0.0 || p_holding_musd_per_sat_year < 0.0 || p_launch_full_musd < 0.0 ||
        p_launch_unit_musd < 0.0 || eps_maneuvering_musd_per_kg < 0.0) {
        throw std::invalid_argument("cost parameters must be >= 0");
    }
}

double launch_price(int q_parking_sats, const CostParams& cp, int cap, CapacityCheck check) {
    if (q_parking_sats < 1) throw std::invalid_argument("launch_price: batch must be >= 1 satellite");
    if (check == CapacityCheck::enforce && q_parking_sats > cap) {
        throw std::invalid_argument("launch_price: batch of " + std::to_string(q_parking_sats) +
                                    " exceeds launch capacity " + std::to_string(cap));
    }
    return std::min(cp.p_launch_full_musd, q_parking_sats * cp.p_launch_unit_musd);
}

namespace {

void finish(CostBreakdown& c) {
    c.tessac = c.manufacturing + c.holding + c.launch + c.maneuvering;
}

}  // namespace

CostBreakdown tessac(const ConstellationConfig& cfg, const SpareStrategy& strategy,
                     const PolicyMetrics& metrics, const orbits::TransferResult& transfer,
                     const CostParams& cp, const LaunchParams& lp, CapacityCheck check) {
    cp.validate();
    const double days = cfg.n_days_per_year;
    const double failures_per_year = metrics.lambda_plane_per_day * cfg.n_plane * days;
    const int q_parking = strategy.q_parking_sats();

    CostBreakdown c;
    c.manufacturing = cp.p_sat_musd * failures_per_year;
    // Negative analytic mean stocks (heavy backordering) carry no holding credit.
    c.holding = cp.p_holding_musd_per_sat_year *
                (std::max(0.0, metrics.mean_stock_plane) * cfg.n_plane +
                 std::max(0.0, metrics.mean_stock_parking_batches) * strategy.q_plane *
                     strategy.n_parking);
    const double launches_per_year = metrics.lambda_parking_batches_per_day * strategy.q_plane /
                                     q_parking * strategy.n_parking * days;
    c.launch = launch_price(q_parking, cp, lp.cap_launch, check) * launches_per_year;
    c.maneuvering = transfer.fuel_mass_kg * failures_per_year * cp.eps_maneuvering_musd_per_kg;
    finish(c);
    return c;
}

CostBreakdown tessac_inplane_only(const ConstellationConfig& cfg, const inventory::SQPolicy& policy,
                                  const PolicyMetrics& metrics, const CostParams& cp,
                                  const LaunchParams& lp) {
    cp.validate();
    policy.validate();
    const double days = cfg.n_days_per_year;
    const double failures_per_year = metrics.lambda_plane_per_day * cfg.n_plane * days;

    CostBreakdown c;
    c.manufacturing = cp.p_sat_musd * failures_per_year;
    c.holding = cp.p_holding_musd_per_sat_year * std::max(0.0, metrics.mean_stock_plane) * cfg.n_plane;
    const double launches_per_year =
        metrics.lambda_plane_per_day / policy.order_quantity_q * cfg.n_plane * days;
    c.launch = launch_price(policy.order_quantity_q, cp, lp.cap_launch) * launches_per_year;
    c.maneuvering = 0.0;
    finish(c);
    return c;
}

orbits::TransferResult parking_transfer(const ConstellationConfig& cfg, const SpareStrategy& strategy,
                                        const SatelliteParams& sat,
                                        const orbits::EarthConstants& earth) {
    return orbits::hohmann_transfer(strategy.parking_orbit(cfg), cfg.plane_orbit(), sat.m_dry_kg,
                                    sat.v_exhaust_km_s, earth);
}

}  // namespace spares
