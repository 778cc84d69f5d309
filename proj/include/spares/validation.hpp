// Model-accuracy study: Latin hypercube test problems, reorder-point sizing,
// model-vs-simulation relative errors, and the launch-gap exponential fit.
#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "spares/chain_model.hpp"
#include "spares/cost_model.hpp"
#include "spares/simulator.hpp"

namespace spares::validation {

struct Dimension {
    std::string name;
    double lo = 0.0;
    double hi = 0.0;
    bool integer = false;
};

inline constexpr std::size_t kTradeDims = 11;

/// Sampled trade space. Dimension order: pt_launch, h_plane, h_parking,
/// inclination, lambda_sat, mu_launch, n_plane, n_parking, n_sats, q_plane,
/// k_q_parking.
struct TradeSpace {
    std::array<Dimension, kTradeDims> dims;

    static TradeSpace defaults();
    void validate() const;
};

/// One test problem: constellation, launch and the batch sizes; reorder
/// points are left at 1 until sized.
struct ValidationCase {
    ConstellationConfig constellation;
    SpareStrategy strategy;
    LaunchParams launch;

    friend bool operator==(const ValidationCase&, const ValidationCase&) = default;
};

/// Latin hypercube on the unit cube: row i holds one point; for every
/// dimension the n values fall one per stratum [k/n, (k+1)/n).
std::vector<std::array<double, kTradeDims>> lhs_unit(std::size_t n, std::uint64_t seed);

/// LHS test problems. Integer dimensions are spread over [lo - 1/2, hi + 1/2)
/// and rounded to the nearest in-bounds integer. If rounding produces
/// duplicate cases the design is redrawn, at most 10 times.
std::vector<ValidationCase> lhs_sample(const TradeSpace& space, std::size_t n, std::uint64_t seed,
                                       const LaunchParams& fixed_launch = {});

/// Maps one unit-cube point into the trade space.
ValidationCase map_point(const TradeSpace& space, const std::array<double, kTradeDims>& unit,
                         const LaunchParams& fixed_launch = {});

struct SizingResult {
    bool feasible = false;
    int s_plane = 0;
    int k_s_parking = 0;
    PolicyMetrics metrics;
    std::string reason;
};

/// Smallest k_s then smallest s_plane (each searched upward from 1 to 10)
/// meeting rho_parking^N_parking >= requirement and
/// rho_plane^N_plane >= requirement.
SizingResult size_reorder_points(const ConstellationConfig& cfg, const SpareStrategy& partial,
                                 const LaunchParams& lp, double requirement = 0.95,
                                 const orbits::EarthConstants& earth = {});

/// |sim - model| / sim * 100. Throws std::domain_error when sim == 0.
double relative_error(double sim_value, double model_value);

/// The five compared outputs.
struct Outputs {
    double mean_stock_plane = 0.0;
    double mean_stock_parking = 0.0;
    double rho_plane = 0.0;
    double rho_parking = 0.0;
    double tessac = 0.0;

    std::array<double, 5> as_array() const {
        return {mean_stock_plane, mean_stock_parking, rho_plane, rho_parking, tessac};
    }
};

inline constexpr std::array<const char*, 5> kOutputNames = {
    "mean_stock_plane", "mean_stock_parking", "rho_plane", "rho_parking", "tessac"};

/// Produces the "observed" outputs for a fully specified case.
using CaseSimulator = std::function<Outputs(const sim::SimConfig&)>;

/// Default observer: sim::run_batch averages.
CaseSimulator batch_simulator(unsigned jobs = 1);

struct CaseReport {
    std::size_t index = 0;
    ValidationCase problem;
    bool feasible = false;
    std::string reason;
    Outputs model;
    Outputs observed;
    std::array<double, 5> error_pct{};
};

struct ErrorReport {
    std::vector<CaseReport> cases;
    std::array<double, 5> mean_error_pct{};
    std::size_t n_feasible = 0;
    std::size_t n_infeasible = 0;
};

struct ValidationOptions {
    TradeSpace space = TradeSpace::defaults();
    std::size_t n_cases = 25;
    double requirement = 0.95;
    double horizon_years = 15.0;
    double warmup_years = 1.0;
    int replications = 100;
    std::uint64_t seed = 1;
    unsigned jobs = 0;

    LaunchParams launch;  // cap_launch is fixed; mu and pt are sampled
    CostParams costs;
    SatelliteParams satellite;
    orbits::EarthConstants earth;
};

/// Runs the whole accuracy study. Infeasible cases are reported and left out
/// of the averages.
ErrorReport run_validation(const ValidationOptions& opt, const CaseSimulator& observe = {});

/// Analytic outputs for a sized case (launch priced without the capacity check).
Outputs model_outputs(const sim::SimConfig& sc, const PolicyMetrics& metrics);

void write_cases_csv(std::ostream& out, const ErrorReport& report);
void write_summary_csv(std::ostream& out, const ErrorReport& report);

/// Maximum-likelihood exponential mean of the gaps between consecutive
/// timestamps (days). Throws for fewer than two or unsorted timestamps.
double fit_launch_gaps(std::span<const double> timestamps_days);

/// Parses "YYYY-MM-DD" with an optional "THH:MM[:SS]" / " HH:MM[:SS]" time
/// and trailing 'Z' into days since 1970-01-01. Throws std::invalid_argument.
double parse_iso8601_days(const std::string& text);

/// One ISO-8601 timestamp per line; an unparseable first line is taken as a
/// header and skipped, blank lines are ignored.
std::vector<double> read_launch_dates(std::istream& in);

}  // namespace spares::validation
