#include "commands.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <optional>
#include <ostream>
#include <utility>

#include "CLI11.hpp"
#include "spares/chain_model.hpp"
#include "spares/config.hpp"
#include "spares/cost_model.hpp"
#include "spares/csv.hpp"
#include "spares/optimizer.hpp"
#include "spares/rng.hpp"
#include "spares/simulator.hpp"
#include "spares/validation.hpp"

namespace spares::cli {

namespace {

namespace fs = std::filesystem;

struct Options {
    std::string config_path;
    std::optional<std::uint64_t> seed;
    unsigned jobs = 0;
    std::string out_dir;
    std::string format = "text";
};

// Flat list of named numbers, rendered either as aligned text or as CSV.
class Report {
public:
    void add(std::string name, double value) { rows_.emplace_back(std::move(name), csv::format_double(value)); }
    void add(std::string name, long value) { rows_.emplace_back(std::move(name), std::to_string(value)); }
    void add(std::string name, int value) { rows_.emplace_back(std::move(name), std::to_string(value)); }
    void add_text(std::string name, std::string value) { rows_.emplace_back(std::move(name), std::move(value)); }

    void render(std::ostream& out, const std::string& format) const {
        if (format == "csv") {
            write_csv(out);
            return;
        }
        std::size_t width = 0;
        for (const auto& r : rows_) width = std::max(width, r.first.size());
        for (const auto& r : rows_) {
            out << std::left << std::setw(static_cast<int>(width + 2)) << r.first << r.second << '\n';
        }
    }

    void write_csv(std::ostream& out) const {
        csv::write_row(out, {"quantity", "value"});
        for (const auto& r : rows_) csv::write_row(out, {r.first, r.second});
    }

private:
    std::vector<std::pair<std::string, std::string>> rows_;
};

class OutputDir {
public:
    explicit OutputDir(std::string dir) : dir_(std::move(dir)) {
        if (!dir_.empty()) fs::create_directories(dir_);
    }
    bool enabled() const { return !dir_.empty(); }

    std::ofstream open(const std::string& name) const {
        std::ofstream f(fs::path(dir_) / name, std::ios::binary);
        if (!f) throw std::runtime_error("cannot write " + (fs::path(dir_) / name).string());
        return f;
    }

private:
    std::string dir_;
};

config::RunConfig load(const Options& o) {
    if (o.config_path.empty()) throw config::ConfigError("--config", "a config file is required");
    config::RunConfig rc = config::load_config(o.config_path);
    if (o.seed) rc.seed = *o.seed;
    return rc;
}

void add_costs(Report& r, const CostBreakdown& c) {
    r.add("cost_manufacturing_musd_per_year", c.manufacturing);
    r.add("cost_holding_musd_per_year", c.holding);
    r.add("cost_launch_musd_per_year", c.launch);
    r.add("cost_maneuvering_musd_per_year", c.maneuvering);
    r.add("tessac_musd_per_year", c.tessac);
}

void add_strategy(Report& r, const std::string& prefix, const SpareStrategy& s) {
    r.add(prefix + "n_parking", s.n_parking);
    r.add(prefix + "h_parking_km", s.h_parking_km);
    r.add(prefix + "q_plane", s.q_plane);
    r.add(prefix + "s_plane", s.s_plane);
    r.add(prefix + "k_q_parking", s.k_q_parking);
    r.add(prefix + "k_s_parking", s.k_s_parking);
}

int cmd_evaluate(const Options& o, std::ostream& out, std::ostream& err) {
    const config::RunConfig rc = load(o);
    if (!rc.strategy) throw config::ConfigError("strategy", "missing required section");
    const SpareStrategy& st = *rc.strategy;
    const PolicyMetrics m = evaluate_strategy(rc.constellation, st, rc.launch, rc.earth);
    const auto transfer = parking_transfer(rc.constellation, st, rc.satellite, rc.earth);
    const CostBreakdown c = tessac(rc.constellation, st, m, transfer, rc.costs, rc.launch, CapacityCheck::ignore);
    const double product = m.fill_rate_product(rc.constellation.n_plane, st.n_parking);
    const bool capacity_ok = st.q_parking_sats() <= rc.launch.cap_launch;
    const bool fill_ok = product >= rc.rho_target;

    Report r;
    add_strategy(r, "", st);
    r.add("lambda_plane_per_day", m.lambda_plane_per_day);
    r.add("lambda_parking_batches_per_day", m.lambda_parking_batches_per_day);
    r.add("p_av", m.p_av);
    r.add("es_plane", m.es_plane);
    r.add("es_parking_batches", m.es_parking_batches);
    r.add("rho_plane", m.rho_plane);
    r.add("rho_parking", m.rho_parking);
    r.add("fill_rate_product", product);
    r.add("mean_stock_plane", m.mean_stock_plane);
    r.add("mean_stock_parking_batches", m.mean_stock_parking_batches);
    r.add("mean_leadtime_plane_days", m.mean_leadtime_plane_days);
    r.add("mean_leadtime_parking_days", m.mean_leadtime_parking_days);
    r.add("neglected_supply_mass", m.neglected_supply_mass);
    r.add("transfer_delta_v_km_s", transfer.delta_v_km_s);
    r.add("transfer_fuel_kg", transfer.fuel_mass_kg);
    r.add("transfer_tof_days", transfer.time_of_flight_days);
    add_costs(r, c);
    r.add("q_parking_sats", st.q_parking_sats());
    r.add("capacity_ok", capacity_ok ? 1 : 0);
    r.add("fill_rate_ok", fill_ok ? 1 : 0);
    r.render(out, o.format);

    if (!m.superposition_valid) {
        err << "warning: n_plane < 20, the parking demand superposition is approximate\n";
    }
    OutputDir dir(o.out_dir);
    if (dir.enabled()) {
        auto f = dir.open("evaluate.csv");
        r.write_csv(f);
    }
    if (!capacity_ok || !fill_ok) {
        err << "strategy is infeasible:"
            << (capacity_ok ? "" : " batch exceeds launch capacity;")
            << (fill_ok ? "" : " fill-rate product below target;") << '\n';
        return kExitInfeasible;
    }
    return kExitOk;
}

int cmd_simulate(const Options& o, const std::string& events_path, std::ostream& out) {
    const config::RunConfig rc = load(o);
    const sim::SimConfig sc = rc.sim_config();
    const sim::SimulationResult res = sim::run_batch(sc, o.jobs);

    Report r;
    r.add("replications", sc.replications);
    r.add("horizon_years", sc.horizon_years);
    r.add("warmup_years", sc.warmup_years);
    auto est = [&](const std::string& name, const sim::Estimate& e) {
        r.add(name, e.mean);
        r.add(name + "_std_error", e.std_error);
    };
    est("mean_stock_plane", res.mean_stock_plane);
    est("mean_stock_parking_batches", res.mean_stock_parking_batches);
    est("rho_plane", res.rho_plane);
    est("rho_parking", res.rho_parking);
    est("tessac_musd_per_year", res.tessac);
    est("lambda_plane_per_day", res.lambda_plane_hat);
    r.render(out, o.format);

    OutputDir dir(o.out_dir);
    if (dir.enabled()) {
        auto f = dir.open("simulate_summary.csv");
        r.write_csv(f);
        auto g = dir.open("simulate_replications.csv");
        csv::write_row(g, {"replication", "mean_stock_plane", "mean_stock_parking_batches", "rho_plane",
                           "rho_parking", "tessac", "failures", "launches", "transferred_sats"});
        for (std::size_t i = 0; i < res.replications.size(); ++i) {
            const auto& rr = res.replications[i];
            csv::write_row(g, {std::to_string(i), csv::format_double(rr.mean_stock_plane),
                               csv::format_double(rr.mean_stock_parking_batches),
                               csv::format_double(rr.rho_plane), csv::format_double(rr.rho_parking),
                               csv::format_double(rr.cost.tessac), std::to_string(rr.failures),
                               std::to_string(rr.launches), std::to_string(rr.transferred_sats)});
        }
    }
    if (!events_path.empty()) {
        std::ofstream ev(events_path, std::ios::binary);
        if (!ev) throw std::runtime_error("cannot write " + events_path);
        sim::run_replication(sc, rng::derive_seed(sc.seed, "replication", 0), sim::csv_event_logger(ev));
    }
    return kExitOk;
}

struct ValidateFlags {
    std::optional<std::size_t> n;
    std::optional<int> reps;
    std::optional<double> horizon;
    std::optional<double> warmup;
};

int cmd_validate(const Options& o, const ValidateFlags& vf, std::ostream& out) {
    const config::RunConfig rc = load(o);
    validation::ValidationOptions vo = rc.validation_options(o.jobs);
    if (vf.n) vo.n_cases = *vf.n;
    if (vf.reps) vo.replications = *vf.reps;
    if (vf.horizon) vo.horizon_years = *vf.horizon;
    if (vf.warmup) vo.warmup_years = *vf.warmup;
    if (vo.n_cases < 1 || vo.replications < 1 || !(vo.horizon_years > vo.warmup_years)) {
        throw std::invalid_argument("validate: need n >= 1, reps >= 1 and horizon > warmup");
    }
    const validation::ErrorReport rep = validation::run_validation(vo);

    Report r;
    r.add("cases", static_cast<long>(rep.cases.size()));
    r.add("feasible_cases", static_cast<long>(rep.n_feasible));
    r.add("infeasible_cases", static_cast<long>(rep.n_infeasible));
    for (std::size_t k = 0; k < 5; ++k) {
        r.add(std::string("mean_error_pct_") + validation::kOutputNames[k], rep.mean_error_pct[k]);
    }
    r.render(out, o.format);

    OutputDir dir(o.out_dir);
    if (dir.enabled()) {
        auto f = dir.open("validation_cases.csv");
        validation::write_cases_csv(f, rep);
        auto g = dir.open("validation_summary.csv");
        validation::write_summary_csv(g, rep);
    }
    return rep.n_feasible > 0 ? kExitOk : kExitInfeasible;
}

int cmd_optimize(const Options& o, bool inplane_only, std::ostream& out, std::ostream& err) {
    const config::RunConfig rc = load(o);
    const opt::OptimizationProblem prob = rc.problem();
    const opt::InplaneResult base = opt::optimize_inplane_only(prob);

    Report r;
    opt::OptimizationResult multi;
    if (!inplane_only) {
        multi = opt::optimize(prob, rc.seed, o.jobs);
        r.add("multi_feasible", multi.feasible ? 1 : 0);
        if (multi.feasible) {
            add_strategy(r, "multi_", multi.best);
            r.add("multi_q_parking_sats", multi.best.q_parking_sats());
            r.add("multi_fill_rate_product", multi.fitness.fill_rate_product);
            r.add("multi_cost_manufacturing", multi.fitness.cost.manufacturing);
            r.add("multi_cost_holding", multi.fitness.cost.holding);
            r.add("multi_cost_launch", multi.fitness.cost.launch);
            r.add("multi_cost_maneuvering", multi.fitness.cost.maneuvering);
            r.add("multi_tessac_musd_per_year", multi.fitness.tessac);
        }
        r.add("multi_evaluations", multi.evaluations);
    }
    r.add("inplane_feasible", base.feasible ? 1 : 0);
    if (base.feasible) {
        r.add("inplane_q_plane", base.policy.order_quantity_q);
        r.add("inplane_s_plane", base.policy.reorder_point_s);
        r.add("inplane_fill_rate_product", base.fill_rate_product);
        r.add("inplane_cost_manufacturing", base.cost.manufacturing);
        r.add("inplane_cost_holding", base.cost.holding);
        r.add("inplane_cost_launch", base.cost.launch);
        r.add("inplane_tessac_musd_per_year", base.cost.tessac);
    }
    if (!inplane_only && multi.feasible && base.feasible) {
        r.add("savings_pct", opt::savings_pct(base.cost.tessac, multi.fitness.tessac));
    }
    r.render(out, o.format);

    OutputDir dir(o.out_dir);
    if (dir.enabled()) {
        auto f = dir.open("optimize_result.csv");
        opt::write_result_csv(f, inplane_only ? nullptr : &multi, &base);
        if (!inplane_only) {
            auto g = dir.open("optimize_trace.csv");
            opt::write_trace_csv(g, multi.trace);
        }
    }
    if (!base.feasible || (!inplane_only && !multi.feasible)) {
        err << "no feasible strategy found\n";
        return kExitInfeasible;
    }
    return kExitOk;
}

int cmd_sensitivity(const Options& o, const std::vector<double>& rates, std::ostream& out, std::ostream& err) {
    const config::RunConfig rc = load(o);
    const auto rows = opt::sensitivity_sweep(rc.problem(), rates, rc.seed, o.jobs);
    if (o.format == "csv") {
        opt::write_sensitivity_csv(out, rows);
    } else {
        out << std::left << std::setw(12) << "lambda_sat" << std::setw(22) << "tessac_multi"
            << std::setw(22) << "tessac_inplane" << "savings_pct\n";
        for (const auto& row : rows) {
            out << std::setw(12) << csv::format_double(row.lambda_sat_per_year);
            if (row.ok) {
                out << std::setw(22) << csv::format_double(row.tessac_multi) << std::setw(22)
                    << csv::format_double(row.tessac_inplane) << csv::format_double(row.savings_pct) << '\n';
            } else {
                out << "failed: " << row.error << '\n';
            }
        }
    }
    OutputDir dir(o.out_dir);
    if (dir.enabled()) {
        auto f = dir.open("sensitivity.csv");
        opt::write_sensitivity_csv(f, rows);
    }
    bool any_failed = false;
    for (const auto& row : rows) {
        if (!row.ok) {
            err << "rate " << csv::format_double(row.lambda_sat_per_year) << ": " << row.error << '\n';
            any_failed = true;
        }
    }
    return any_failed ? kExitInfeasible : kExitOk;
}

int cmd_fit(const Options& o, const std::string& path, std::ostream& out) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open launch-date file " + path);
    const std::vector<double> days = validation::read_launch_dates(in);
    const double mean = validation::fit_launch_gaps(days);
    Report r;
    r.add("launches", static_cast<long>(days.size()));
    r.add("mean_gap_days", mean);
    r.render(out, o.format);
    OutputDir dir(o.out_dir);
    if (dir.enabled()) {
        auto f = dir.open("launch_fit.csv");
        r.write_csv(f);
    }
    return kExitOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Spare-satellite supply chain analysis: evaluate, simulate, validate and optimize "
                 "multi-echelon spare strategies"};
    app.require_subcommand(1);
    app.fallthrough();
    Options o;
    app.add_option("--config", o.config_path, "JSON run configuration");
    app.add_option("--seed", o.seed, "Master seed (overrides the config)");
    app.add_option("--jobs", o.jobs, "Worker threads (0 = all cores)");
    app.add_option("--out", o.out_dir, "Directory for CSV outputs");
    app.add_option("--format", o.format, "Report format")->check(CLI::IsMember({"text", "csv"}));

    auto* evaluate = app.add_subcommand("evaluate", "Analytic metrics and TESSAC of the configured strategy");
    auto* simulate = app.add_subcommand("simulate", "Monte Carlo replications of the configured strategy");
    std::string events_path;
    simulate->add_option("--events", events_path, "Write the event log of replication 0 to this CSV");
    auto* validate = app.add_subcommand("validate", "Model-vs-simulation accuracy study on LHS cases");
    ValidateFlags vf;
    validate->add_option("--n", vf.n, "Number of LHS cases");
    validate->add_option("--reps", vf.reps, "Replications per case");
    validate->add_option("--horizon", vf.horizon, "Simulated years per replication");
    validate->add_option("--warmup", vf.warmup, "Warm-up years per replication");
    auto* optimize = app.add_subcommand("optimize", "Optimize the multi-echelon strategy and the baseline");
    bool inplane_only = false;
    optimize->add_flag("--inplane-only", inplane_only, "Only the in-plane-only baseline");
    auto* sensitivity = app.add_subcommand("sensitivity", "Savings versus satellite failure rate");
    std::vector<double> rates = {0.001, 0.005, 0.01, 0.05, 0.1};
    sensitivity->add_option("--rates", rates, "Comma-separated failure rates per year")->delimiter(',');
    auto* fit = app.add_subcommand("fit-launch-data", "Exponential fit of gaps between launch dates");
    std::string dates_path;
    fit->add_option("dates", dates_path, "CSV with one ISO-8601 date per line")->required();

    // CLI11 expects reversed arguments when given a vector.
    std::vector<std::string> rev(args.rbegin(), args.rend());
    try {
        app.parse(rev);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitInvalid;
    }

    try {
        if (*evaluate) return cmd_evaluate(o, out, err);
        if (*simulate) return cmd_simulate(o, events_path, out);
        if (*validate) return cmd_validate(o, vf, out);
        if (*optimize) return cmd_optimize(o, inplane_only, out, err);
        if (*sensitivity) return cmd_sensitivity(o, rates, out, err);
        if (*fit) return cmd_fit(o, dates_path, out);
    } catch (const config::ConfigError& e) {
        err << "config error: " << e.what() << '\n';
        return kExitInvalid;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kExitInvalid;
    }
    return kExitInvalid;
}

}  // namespace spares::cli
