// Total expected spare strategy annual cost (TESSAC), million US$/year.
#pragma once

#include "spares/chain_model.hpp"
#include "spares/inventory.hpp"
#include "spares/orbits.hpp"

namespace spares {

struct CostParams {
    double p_sat_musd = 0.5;
    double p_holding_musd_per_sat_year = 0.5;
    double p_launch_full_musd = 47.6;
    double p_launch_unit_musd = 10.0;
    double eps_maneuvering_musd_per_kg = 0.001;

    void validate() const;
};

struct CostBreakdown {
    double manufacturing = 0.0;
    double holding = 0.0;
    double launch = 0.0;
    double maneuvering = 0.0;
    double tessac = 0.0;
};

/// Whether launch pricing rejects batches larger than the rocket capacity.
/// The optimizer prices over-capacity candidates and penalizes them
/// separately; the accuracy study samples batch sizes past the capacity.
enum class CapacityCheck { enforce, ignore };

/// min(full rocket price, q * unit price). Throws if q < 1 or, under
/// CapacityCheck::enforce, q > cap.
double launch_price(int q_parking_sats, const CostParams& cp, int cap,
                    CapacityCheck check = CapacityCheck::enforce);

/// Cost of the multi-echelon strategy. `transfer` is the parking -> plane
/// Hohmann transfer for one satellite.
CostBreakdown tessac(const ConstellationConfig& cfg, const SpareStrategy& strategy,
                     const PolicyMetrics& metrics, const orbits::TransferResult& transfer,
                     const CostParams& cp, const LaunchParams& lp,
                     CapacityCheck check = CapacityCheck::enforce);

/// Cost of the in-plane-only baseline: one launch per plane order, no
/// maneuvering, holding on in-plane stock only.
CostBreakdown tessac_inplane_only(const ConstellationConfig& cfg, const inventory::SQPolicy& policy,
                                  const PolicyMetrics& metrics, const CostParams& cp,
                                  const LaunchParams& lp);

/// Parking -> plane transfer for the strategy's parking altitude.
orbits::TransferResult parking_transfer(const ConstellationConfig& cfg, const SpareStrategy& strategy,
                                        const SatelliteParams& sat,
                                        const orbits::EarthConstants& earth = {});

}  // namespace spares
