// JSON run configuration.
//
// Sections constellation, launch, costs and satellite are required and every
// key in them must be given. Sections strategy, simulation, optimization,
// validation and earth are optional; keys left out keep their defaults.
// Unknown sections or keys are errors. Units:
//
//   constellation: h_plane_km, inclination_deg, n_plane, n_sats,
//                  lambda_sat_per_year, n_days_per_year
//   strategy:      n_parking, h_parking_km, q_plane, s_plane, k_q_parking, k_s_parking
//   launch:        mu_launch_days, pt_launch_days, cap_launch (satellites)
//   costs:         p_sat_musd, p_holding_musd_per_sat_year, p_launch_full_musd,
//                  p_launch_unit_musd, eps_maneuvering_musd_per_kg
//   satellite:     m_dry_kg, v_exhaust_km_s
//   earth:         mu_km3_s2, r_earth_km, j2
//   simulation:    horizon_years, warmup_years, replications
//   optimization:  rho_target, inplane_s_max, bounds{...}, ga{...}
//   validation:    n_cases, requirement, horizon_years, warmup_years, replications
//   seed:          master seed (top level, optional)
#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>

#include "spares/chain_model.hpp"
#include "spares/cost_model.hpp"
#include "spares/optimizer.hpp"
#include "spares/orbits.hpp"
#include "spares/validation.hpp"

namespace spares::config {

/// Error carrying the dotted key path of the offending entry.
class ConfigError : public std::runtime_error {
public:
    ConfigError(std::string path, const std::string& what)
        : std::runtime_error(path + ": " + what), path_(std::move(path)) {}
    const std::string& path() const { return path_; }

private:
    std::string path_;
};

struct SimulationSettings {
    double horizon_years = 15.0;
    double warmup_years = 1.0;
    int replications = 100;
};

struct ValidationSettings {
    std::size_t n_cases = 25;
    double requirement = 0.95;
    double horizon_years = 15.0;
    double warmup_years = 1.0;
    int replications = 100;
};

struct RunConfig {
    ConstellationConfig constellation;
    std::optional<SpareStrategy> strategy;
    LaunchParams launch;
    CostParams costs;
    SatelliteParams satellite;
    orbits::EarthConstants earth;
    SimulationSettings simulation;
    double rho_target = 0.95;
    int inplane_s_max = 40;
    opt::VariableBounds bounds;
    opt::GaSettings ga;
    ValidationSettings validation;
    std::uint64_t seed = 1;

    opt::OptimizationProblem problem() const;
    sim::SimConfig sim_config() const;  // requires a strategy
    validation::ValidationOptions validation_options(unsigned jobs) const;
};

RunConfig parse_config(const std::string& json_text);
RunConfig load_config(const std::string& path);

}  // namespace spares::config
