// Continuous-time discrete-event Monte Carlo of the spare supply chain.
//
// Model rules:
//  * failures hit planes as independent Poisson processes; a failed
//    satellite is replaced at once from in-plane stock or backordered;
//  * a plane orders Q_plane satellites when its net stock (on hand minus
//    backorders) is <= s_plane and it has no order outstanding;
//  * the order is served by the parking orbit with the shortest transfer
//    time (drift wait from the actual RAAN phase + Hohmann TOF) among those
//    holding at least one batch, ties to the lowest index; if every parking
//    orbit is empty the order queues and is re-dispatched whenever a launch
//    replenishes a parking orbit;
//  * a parking orbit orders k_Q batches from the ground when its stock is
//    <= k_s and no launch is outstanding; the launch arrives after
//    pt_launch + Exp(mu_launch);
//  * parking planes start evenly spaced in RAAN with parking 0 aligned with
//    plane 0;
//  * every location starts with no order outstanding and either s + Q units
//    (InitialStock::full) or a level drawn uniformly from s+1 .. s+Q
//    (InitialStock::stationary, the long-run law of the inventory position).
#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

#include "spares/chain_model.hpp"
#include "spares/cost_model.hpp"
#include "spares/orbits.hpp"

namespace spares::sim {

enum class InitialStock { full, stationary };

struct SimConfig {
    ConstellationConfig constellation;
    SpareStrategy strategy;
    LaunchParams launch;
    CostParams costs;
    SatelliteParams satellite;
    orbits::EarthConstants earth;

    double horizon_years = 15.0;
    /// Statistics ignore the first `warmup_years` of every replication.
    double warmup_years = 1.0;
    int replications = 100;
    std::uint64_t seed = 1;
    InitialStock initial_stock = InitialStock::stationary;
    /// Keep every plane order's lead time (order placed -> batch delivered).
    bool record_lead_times = false;

    void validate() const;
};

/// Source of the random quantities driving one replication.
class EventSource {
public:
    virtual ~EventSource() = default;
    /// Gap to the next failure anywhere in the constellation.
    virtual double next_failure_gap(double total_rate_per_day) = 0;
    /// Plane hit by that failure, in [0, n_plane).
    virtual int failing_plane(int n_plane) = 0;
    /// Launch-window wait after order processing.
    virtual double launch_wait(double mean_days) = 0;
    /// Initial on-hand level in [lo, hi] under InitialStock::stationary.
    /// Planes are drawn first, in index order, then parking orbits.
    virtual long initial_level(long /*lo*/, long hi) { return hi; }
};

struct EventRecord {
    double time_days = 0.0;
    std::string type;      // failure, plane_order, plane_arrival, parking_order, parking_arrival
    std::string location;  // plane:<k> or parking:<j>
    long stock = 0;        // on-hand stock at the location after the event
};

using EventLogger = std::function<void(const EventRecord&)>;

/// Writes events as CSV rows "time_days,event,location,stock".
EventLogger csv_event_logger(std::ostream& out);

/// Satellite flow over the whole replication (warm-up included).
struct SatelliteLedger {
    long ordered_from_ground = 0;   // launches ordered x Q_parking
    long consumed = 0;              // failures actually replaced
    long in_transit_ground = 0;     // ordered launches not yet arrived
    long in_transit_transfer = 0;   // batches dispatched to planes, not arrived
    long stock_delta = 0;           // final minus initial on-hand stock

    bool balanced() const {
        return ordered_from_ground == consumed + in_transit_ground + in_transit_transfer + stock_delta;
    }
};

struct ReplicationResult {
    double mean_stock_plane = 0.0;            // satellites per plane, time averaged
    double mean_stock_parking_batches = 0.0;  // batches per parking orbit, time averaged
    double rho_plane = 1.0;
    double rho_parking = 1.0;
    CostBreakdown cost;                       // annualized over the statistics window
    double lambda_plane_hat = 0.0;            // failures per plane per day

    long failures = 0;
    long backordered_units = 0;
    long plane_cycles = 0;
    long parking_cycles = 0;
    long parking_misses = 0;
    long launches = 0;
    long transferred_sats = 0;
    long queued_orders = 0;
    int max_outstanding_per_location = 0;

    SatelliteLedger ledger;
    std::vector<double> plane_lead_times;
};

struct Estimate {
    double mean = 0.0;
    double std_error = 0.0;
};

struct SimulationResult {
    Estimate mean_stock_plane;
    Estimate mean_stock_parking_batches;
    Estimate rho_plane;
    Estimate rho_parking;
    Estimate tessac;
    Estimate lambda_plane_hat;
    std::vector<ReplicationResult> replications;
};

/// Runs one replication driven by `source`.
ReplicationResult simulate(const SimConfig& sc, EventSource& source, const EventLogger& log = {});

/// One replication with the stream seeded by `seed`.
ReplicationResult run_replication(const SimConfig& sc, std::uint64_t seed,
                                  const EventLogger& log = {});

/// `sc.replications` replications with seeds derive_seed(sc.seed, "replication", r),
/// aggregated in replication order. The result does not depend on `jobs`.
SimulationResult run_batch(const SimConfig& sc, unsigned jobs = 0);

/// Mean and standard error of the mean.
Estimate estimate(const std::vector<double>& values);

}  // namespace spares::sim
