#include "spares/chain_model.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace spares {

namespace {

void require(bool ok, const std::string& what) {
    if (!ok) throw std::invalid_argument(what);
}

void require_int_in(int v, int lo, int hi, const char* name) {
    if (v < lo || v > hi) {
        throw std::invalid_argument(std::string(name) + " must lie in [" + std::to_string(lo) +
                                    ", " + std::to_string(hi) + "], got " + std::to_string(v));
    }
}

}  // namespace

void ConstellationConfig::validate() const {
    require(h_plane_km > 0.0, "constellation altitude must be > 0");
    require(inclination_deg >= 0.0 && inclination_deg <= 180.0,
            "constellation inclination must lie in [0, 180] deg");
    require(n_plane >= 1, "n_plane must be >= 1");
    require(n_sats >= 1, "n_sats must be >= 1");
    require(lambda_sat_per_year >= 0.0, "lambda_sat must be >= 0");
    require(n_days_per_year > 0.0, "n_days_per_year must be > 0");
}

void SpareStrategy::validate(const ConstellationConfig& cfg) const {
    require_int_in(n_parking, 1, 20, "n_parking");
    require(h_parking_km >= 700.0 && h_parking_km <= 1000.0,
            "h_parking must lie in [700, 1000] km, got " + std::to_string(h_parking_km));
    require_int_in(q_plane, 1, 10, "q_plane");
    require_int_in(s_plane, 1, 10, "s_plane");
    require_int_in(k_q_parking, 1, 10, "k_q_parking");
    require_int_in(k_s_parking, 1, 10, "k_s_parking");
    require(h_parking_km < cfg.h_plane_km, "h_parking must be below h_plane");
}

void LaunchParams::validate() const {
    require(mu_launch_days > 0.0, "mu_launch must be > 0");
    require(pt_launch_days > 0.0, "pt_launch must be > 0");
    require(cap_launch >= 1, "cap_launch must be >= 1");
}

void SatelliteParams::validate() const {
    require(m_dry_kg > 0.0, "m_dry must be > 0");
    require(v_exhaust_km_s > 0.0, "v_exhaust must be > 0");
}

double PolicyMetrics::fill_rate_product(int n_plane, int n_parking) const {
    return std::pow(rho_plane, n_plane) * std::pow(rho_parking, n_parking);
}

double plane_demand_rate(const ConstellationConfig& cfg) {
    cfg.validate();
    return cfg.n_sats * cfg.lambda_sat_per_year / cfg.n_days_per_year;
}

double parking_demand_rate(const ConstellationConfig& cfg, const SpareStrategy& strategy) {
    require(strategy.q_plane >= 1 && strategy.n_parking >= 1,
            "parking_demand_rate: need q_plane >= 1 and n_parking >= 1");
    return cfg.n_plane * (plane_demand_rate(cfg) / strategy.q_plane) / strategy.n_parking;
}

bool superposition_valid(const ConstellationConfig& cfg) { return cfg.n_plane >= 20; }

LeadTimeDistribution parking_leadtime(const LaunchParams& lp) {
    lp.validate();
    return LeadTimeDistribution::shifted_exponential(lp.pt_launch_days, lp.mu_launch_days);
}

double parking_expected_shortage(const ConstellationConfig& cfg, const SpareStrategy& strategy,
                                 const LaunchParams& lp) {
    const double lambda = parking_demand_rate(cfg, strategy);
    const int ks = strategy.k_s_parking;
    const double es = parking_leadtime(lp).expectation(
        [&](double tau) { return inventory::expected_shortage(ks, lambda * tau); });
    if (!std::isfinite(es)) throw std::runtime_error("parking_expected_shortage: quadrature did not converge");
    return es;
}

double parking_availability(double es_parking, int k_q) {
    require(k_q >= 1, "parking_availability: k_Q must be >= 1");
    require(es_parking >= 0.0 && es_parking <= k_q,
            "parking_availability: expected shortage must lie in [0, k_Q]");
    return 1.0 - es_parking / k_q;
}

std::vector<double> supply_probabilities_raw(double p_av, int n_parking) {
    require(p_av > 0.0 && p_av <= 1.0, "supply_probabilities: p_av must lie in (0, 1]");
    require(n_parking >= 1, "supply_probabilities: n_parking must be >= 1");
    const int n = n_parking;
    std::vector<double> probs(n, 0.0);
    for (int i = 1; i <= n; ++i) {
        double sum = 0.0;
        double binom = 1.0;  // C(n - i, k - 1), starting at k = 1
        for (int k = 1; k <= n - i + 1; ++k) {
            sum += binom * std::pow(p_av, k) * std::pow(1.0 - p_av, n - k);
            binom = binom * (n - i - (k - 1)) / k;
        }
        probs[i - 1] = sum;
    }
    return probs;
}

std::vector<double> supply_probabilities(double p_av, int n_parking) {
    std::vector<double> probs = supply_probabilities_raw(p_av, n_parking);
    const double covered = -std::expm1(n_parking * std::log1p(-p_av));  // 1 - (1-p)^n
    const double total = p_av == 1.0 ? 1.0 : covered;
    for (double& p : probs) p /= total;
    return probs;
}

LeadTimeDistribution plane_leadtime(const ConstellationConfig& cfg, const SpareStrategy& strategy,
                                    double p_av, const orbits::EarthConstants& earth) {
    const auto parking = strategy.parking_orbit(cfg);
    const auto plane = cfg.plane_orbit();
    const int n = strategy.n_parking;
    std::vector<Segment> segments(n);
    const double step = orbits::kTwoPi / n;
    for (int i = 0; i < n; ++i) {
        segments[i].lo_days = orbits::transfer_time(i * step, parking, plane, earth);
        segments[i].hi_days =
            orbits::transfer_time(i + 1 == n ? orbits::kTwoPi : (i + 1) * step, parking, plane, earth);
    }
    return LeadTimeDistribution::mixture(supply_probabilities_raw(p_av, n), std::move(segments));
}

double plane_expected_shortage(const ConstellationConfig& cfg, const SpareStrategy& strategy,
                               const LeadTimeDistribution& leadtime) {
    const double lambda = plane_demand_rate(cfg);
    const int s = strategy.s_plane;
    const double es = leadtime.expectation(
        [&](double tau) { return inventory::expected_shortage(s, lambda * tau); });
    if (!std::isfinite(es)) throw std::runtime_error("plane_expected_shortage: quadrature did not converge");
    return es;
}

double plane_fill_rate(double es_plane, const SpareStrategy& strategy) {
    return inventory::fill_rate(es_plane, strategy.q_plane);
}

double parking_fill_rate(double es_parking, const SpareStrategy& strategy) {
    return inventory::fill_rate(es_parking, strategy.k_q_parking);
}

double plane_mean_stock(const ConstellationConfig& cfg, const SpareStrategy& strategy,
                        const LeadTimeDistribution& leadtime) {
    const double lambda = plane_demand_rate(cfg);
    const inventory::SQPolicy policy{strategy.s_plane, strategy.q_plane};
    return leadtime.expectation(
        [&](double tau) { return inventory::mean_stock(policy, lambda * tau); });
}

double parking_mean_stock(const ConstellationConfig& cfg, const SpareStrategy& strategy,
                          const LeadTimeDistribution& leadtime) {
    const double lambda = parking_demand_rate(cfg, strategy);
    const inventory::SQPolicy policy{strategy.k_s_parking, strategy.k_q_parking};
    return leadtime.expectation(
        [&](double tau) { return inventory::mean_stock(policy, lambda * tau); });
}

PolicyMetrics evaluate_strategy(const ConstellationConfig& cfg, const SpareStrategy& strategy,
                                const LaunchParams& lp, const orbits::EarthConstants& earth) {
    cfg.validate();
    strategy.validate(cfg);
    lp.validate();
    earth.validate();

    PolicyMetrics m;
    m.superposition_valid = superposition_valid(cfg);
    m.lambda_plane_per_day = plane_demand_rate(cfg);
    m.lambda_parking_batches_per_day = parking_demand_rate(cfg, strategy);

    const LeadTimeDistribution parking_lt = parking_leadtime(lp);
    m.mean_leadtime_parking_days = parking_lt.mean();
    m.es_parking_batches = parking_expected_shortage(cfg, strategy, lp);
    m.rho_parking = parking_fill_rate(m.es_parking_batches, strategy);
    m.mean_stock_parking_batches = parking_mean_stock(cfg, strategy, parking_lt);

    m.p_av = parking_availability(m.es_parking_batches, strategy.k_q_parking);
    const LeadTimeDistribution plane_lt = plane_leadtime(cfg, strategy, m.p_av, earth);
    m.neglected_supply_mass = plane_lt.neglected_mass();
    m.mean_leadtime_plane_days = plane_lt.mean();
    m.es_plane = plane_expected_shortage(cfg, strategy, plane_lt);
    m.rho_plane = plane_fill_rate(m.es_plane, strategy);
    m.mean_stock_plane = plane_mean_stock(cfg, strategy, plane_lt);
    return m;
}

PolicyMetrics evaluate_inplane_only(const ConstellationConfig& cfg,
                                    const inventory::SQPolicy& policy, const LaunchParams& lp) {
    cfg.validate();
    policy.validate();
    lp.validate();
    if (policy.order_quantity_q > lp.cap_launch) {
        throw std::invalid_argument("evaluate_inplane_only: Q_plane exceeds launch capacity");
    }
    PolicyMetrics m;
    m.lambda_plane_per_day = plane_demand_rate(cfg);
    m.lambda_parking_batches_per_day = 0.0;
    m.p_av = 1.0;
    m.es_parking_batches = 0.0;
    m.rho_parking = 1.0;
    m.mean_stock_parking_batches = 0.0;

    const LeadTimeDistribution lt = parking_leadtime(lp);
    const double lambda = m.lambda_plane_per_day;
    m.mean_leadtime_plane_days = lt.mean();
    m.es_plane = lt.expectation(
        [&](double tau) { return inventory::expected_shortage(policy.reorder_point_s, lambda * tau); });
    m.rho_plane = inventory::fill_rate(m.es_plane, policy.order_quantity_q);
    m.mean_stock_plane =
        lt.expectation([&](double tau) { return inventory::mean_stock(policy, lambda * tau); });
    return m;
}

}  // namespace spares
