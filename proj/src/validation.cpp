#include "spares/validation.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <istream>
#include <numeric>
#include <ostream>
#include <stdexcept>

#include "spares/csv.hpp"
#include "spares/parallel.hpp"
#include "spares/rng.hpp"

namespace spares::validation {

TradeSpace TradeSpace::defaults() {
    TradeSpace t;
    t.dims = {{
        {"pt_launch_days", 30.0, 120.0, false},
        {"h_plane_km", 1000.0, 2000.0, false},
        {"h_parking_km", 700.0, 1000.0, false},
        {"inclination_deg", 30.0, 70.0, false},
        {"lambda_sat_per_year", 0.001, 0.1, false},
        {"mu_launch_days", 30.0, 90.0, false},
        {"n_plane", 20.0, 40.0, true},
        {"n_parking", 1.0, 20.0, true},
        {"n_sats", 20.0, 60.0, true},
        {"q_plane", 1.0, 10.0, true},
        {"k_q_parking", 1.0, 10.0, true},
    }};
    return t;
}

void TradeSpace::validate() const {
    for (const auto& d : dims) {
        if (!(d.lo <= d.hi)) throw std::invalid_argument("trade space: lo > hi for " + d.name);
    }
}

std::vector<std::array<double, kTradeDims>> lhs_unit(std::size_t n, std::uint64_t seed) {
    if (n == 0) throw std::invalid_argument("lhs: n must be >= 1");
    rng::Stream stream(seed);
    std::vector<std::array<double, kTradeDims>> pts(n);
    std::vector<std::size_t> perm(n);
    for (std::size_t d = 0; d < kTradeDims; ++d) {
        std::iota(perm.begin(), perm.end(), std::size_t{0});
        // Fisher-Yates with our own uniform draws for portability.
        for (std::size_t i = n - 1; i > 0; --i) {
            const std::size_t j = static_cast<std::size_t>(stream.uniform_int(static_cast<int>(i + 1)));
            std::swap(perm[i], perm[j]);
        }
        for (std::size_t i = 0; i < n; ++i) {
            pts[i][d] = (static_cast<double>(perm[i]) + stream.uniform()) / static_cast<double>(n);
        }
    }
    return pts;
}

ValidationCase map_point(const TradeSpace& space, const std::array<double, kTradeDims>& unit,
                         const LaunchParams& fixed_launch) {
    std::array<double, kTradeDims> v{};
    for (std::size_t d = 0; d < kTradeDims; ++d) {
        const Dimension& dim = space.dims[d];
        if (dim.integer) {
            const double x = (dim.lo - 0.5) + unit[d] * (dim.hi - dim.lo + 1.0);
            v[d] = std::clamp(std::round(x), dim.lo, dim.hi);
        } else {
            v[d] = dim.lo + unit[d] * (dim.hi - dim.lo);
        }
    }
    ValidationCase c;
    c.launch = fixed_launch;
    c.launch.pt_launch_days = v[0];
    c.constellation.h_plane_km = v[1];
    c.strategy.h_parking_km = v[2];
    c.constellation.inclination_deg = v[3];
    c.constellation.lambda_sat_per_year = v[4];
    c.launch.mu_launch_days = v[5];
    c.constellation.n_plane = static_cast<int>(v[6]);
    c.strategy.n_parking = static_cast<int>(v[7]);
    c.constellation.n_sats = static_cast<int>(v[8]);
    c.strategy.q_plane = static_cast<int>(v[9]);
    c.strategy.k_q_parking = static_cast<int>(v[10]);
    c.strategy.s_plane = 1;
    c.strategy.k_s_parking = 1;
    return c;
}

std::vector<ValidationCase> lhs_sample(const TradeSpace& space, std::size_t n, std::uint64_t seed,
                                       const LaunchParams& fixed_launch) {
    space.validate();
    std::vector<ValidationCase> cases;
    for (int attempt = 0; attempt <= 10; ++attempt) {
        const auto unit = lhs_unit(n, rng::derive_seed(seed, "lhs", static_cast<std::uint64_t>(attempt)));
        cases.clear();
        for (const auto& u : unit) cases.push_back(map_point(space, u, fixed_launch));
        bool unique = true;
        for (std::size_t i = 0; i < cases.size() && unique; ++i) {
            for (std::size_t j = i + 1; j < cases.size(); ++j) {
                if (cases[i] == cases[j]) {
                    unique = false;
                    break;
                }
            }
        }
        if (unique) break;
    }
    return cases;
}

namespace {

bool meets(double rho, int n, double requirement) { return std::pow(rho, n) >= requirement; }

}  // namespace

SizingResult size_reorder_points(const ConstellationConfig& cfg, const SpareStrategy& partial,
                                 const LaunchParams& lp, double requirement,
                                 const orbits::EarthConstants& earth) {
    SizingResult out;
    SpareStrategy st = partial;
    st.s_plane = 1;
    st.k_s_parking = 1;
    try {
        st.validate(cfg);
    } catch (const std::exception& e) {
        out.reason = e.what();
        return out;
    }

    bool parking_ok = false;
    for (int ks = 1; ks <= 10; ++ks) {
        st.k_s_parking = ks;
        const double es = parking_expected_shortage(cfg, st, lp);
        if (meets(parking_fill_rate(es, st), st.n_parking, requirement)) {
            parking_ok = true;
            break;
        }
    }
    if (!parking_ok) {
        out.reason = "parking fill-rate requirement unmet with k_s <= 10";
        return out;
    }

    for (int s = 1; s <= 10; ++s) {
        st.s_plane = s;
        PolicyMetrics m;
        try {
            m = evaluate_strategy(cfg, st, lp, earth);
        } catch (const std::exception& e) {
            out.reason = e.what();
            return out;
        }
        if (meets(m.rho_plane, cfg.n_plane, requirement)) {
            out.feasible = true;
            out.s_plane = s;
            out.k_s_parking = st.k_s_parking;
            out.metrics = m;
            return out;
        }
    }
    out.reason = "in-plane fill-rate requirement unmet with s_plane <= 10";
    return out;
}

double relative_error(double sim_value, double model_value) {
    if (sim_value == 0.0) throw std::domain_error("relative_error: simulated value is zero");
    return std::abs(sim_value - model_value) / std::abs(sim_value) * 100.0;
}

CaseSimulator batch_simulator(unsigned jobs) {
    return [jobs](const sim::SimConfig& sc) {
        const sim::SimulationResult r = sim::run_batch(sc, jobs);
        Outputs o;
        o.mean_stock_plane = r.mean_stock_plane.mean;
        o.mean_stock_parking = r.mean_stock_parking_batches.mean;
        o.rho_plane = r.rho_plane.mean;
        o.rho_parking = r.rho_parking.mean;
        o.tessac = r.tessac.mean;
        return o;
    };
}

Outputs model_outputs(const sim::SimConfig& sc, const PolicyMetrics& metrics) {
    const auto transfer = parking_transfer(sc.constellation, sc.strategy, sc.satellite, sc.earth);
    const CostBreakdown cost = tessac(sc.constellation, sc.strategy, metrics, transfer, sc.costs,
                                      sc.launch, CapacityCheck::ignore);
    Outputs o;
    o.mean_stock_plane = metrics.mean_stock_plane;
    o.mean_stock_parking = metrics.mean_stock_parking_batches;
    o.rho_plane = metrics.rho_plane;
    o.rho_parking = metrics.rho_parking;
    o.tessac = cost.tessac;
    return o;
}

ErrorReport run_validation(const ValidationOptions& opt, const CaseSimulator& observe) {
    const CaseSimulator sim_fn = observe ? observe : batch_simulator(1);
    const auto problems = lhs_sample(opt.space, opt.n_cases, opt.seed, opt.launch);

    ErrorReport report;
    report.cases.resize(problems.size());
    parallel_for(problems.size(), opt.jobs, [&](std::size_t i) {
        CaseReport& cr = report.cases[i];
        cr.index = i;
        cr.problem = problems[i];
        const SizingResult sized = size_reorder_points(cr.problem.constellation, cr.problem.strategy,
                                                       cr.problem.launch, opt.requirement, opt.earth);
        if (!sized.feasible) {
            cr.reason = sized.reason;
            return;
        }
        cr.problem.strategy.s_plane = sized.s_plane;
        cr.problem.strategy.k_s_parking = sized.k_s_parking;

        sim::SimConfig sc;
        sc.constellation = cr.problem.constellation;
        sc.strategy = cr.problem.strategy;
        sc.launch = cr.problem.launch;
        sc.costs = opt.costs;
        sc.satellite = opt.satellite;
        sc.earth = opt.earth;
        sc.horizon_years = opt.horizon_years;
        sc.warmup_years = opt.warmup_years;
        sc.replications = opt.replications;
        sc.seed = rng::derive_seed(opt.seed, "validate", i);

        cr.model = model_outputs(sc, sized.metrics);
        cr.observed = sim_fn(sc);
        const auto model = cr.model.as_array();
        const auto seen = cr.observed.as_array();
        try {
            for (std::size_t k = 0; k < 5; ++k) cr.error_pct[k] = relative_error(seen[k], model[k]);
        } catch (const std::domain_error& e) {
            cr.reason = std::string("simulated output is zero: ") + e.what();
            return;
        }
        cr.feasible = true;
    });

    for (const auto& cr : report.cases) {
        if (!cr.feasible) {
            ++report.n_infeasible;
            continue;
        }
        ++report.n_feasible;
        for (std::size_t k = 0; k < 5; ++k) report.mean_error_pct[k] += cr.error_pct[k];
    }
    if (report.n_feasible > 0) {
        for (double& e : report.mean_error_pct) e /= static_cast<double>(report.n_feasible);
    }
    return report;
}

void write_cases_csv(std::ostream& out, const ErrorReport& report) {
    using csv::format_double;
    std::vector<std::string> header = {"case", "feasible", "pt_launch_days", "h_plane_km",
                                       "h_parking_km", "inclination_deg", "lambda_sat_per_year",
                                       "mu_launch_days", "n_plane", "n_parking", "n_sats",
                                       "q_plane", "k_q_parking", "s_plane", "k_s_parking"};
    for (const char* n : kOutputNames) header.push_back(std::string("model_") + n);
    for (const char* n : kOutputNames) header.push_back(std::string("sim_") + n);
    for (const char* n : kOutputNames) header.push_back(std::string("error_pct_") + n);
    csv::write_row(out, header);
    for (const auto& cr : report.cases) {
        const auto& c = cr.problem;
        std::vector<std::string> row = {
            std::to_string(cr.index), cr.feasible ? "1" : "0",
            format_double(c.launch.pt_launch_days), format_double(c.constellation.h_plane_km),
            format_double(c.strategy.h_parking_km), format_double(c.constellation.inclination_deg),
            format_double(c.constellation.lambda_sat_per_year), format_double(c.launch.mu_launch_days),
            std::to_string(c.constellation.n_plane), std::to_string(c.strategy.n_parking),
            std::to_string(c.constellation.n_sats), std::to_string(c.strategy.q_plane),
            std::to_string(c.strategy.k_q_parking), std::to_string(cr.feasible ? c.strategy.s_plane : 0),
            std::to_string(cr.feasible ? c.strategy.k_s_parking : 0)};
        for (double v : cr.model.as_array()) row.push_back(format_double(v));
        for (double v : cr.observed.as_array()) row.push_back(format_double(v));
        for (double v : cr.error_pct) row.push_back(format_double(v));
        csv::write_row(out, row);
    }
}

void write_summary_csv(std::ostream& out, const ErrorReport& report) {
    csv::write_row(out, {"output", "mean_relative_error_pct", "feasible_cases", "infeasible_cases"});
    for (std::size_t k = 0; k < 5; ++k) {
        csv::write_row(out, {kOutputNames[k], csv::format_double(report.mean_error_pct[k]),
                             std::to_string(report.n_feasible), std::to_string(report.n_infeasible)});
    }
}

double fit_launch_gaps(std::span<const double> t) {
    if (t.size() < 2) throw std::invalid_argument("fit_launch_gaps: need at least two launch dates");
    double sum = 0.0;
    for (std::size_t i = 1; i < t.size(); ++i) {
        if (t[i] < t[i - 1]) throw std::invalid_argument("fit_launch_gaps: dates must be sorted");
        sum += t[i] - t[i - 1];
    }
    return sum / static_cast<double>(t.size() - 1);
}

double parse_iso8601_days(const std::string& raw) {
    std::string text = raw;
    while (!text.empty() && (text.back() == '\r' || text.back() == ' ' || text.back() == '\t')) {
        text.pop_back();
    }
    std::size_t lead = 0;
    while (lead < text.size() && (text[lead] == ' ' || text[lead] == '\t')) ++lead;
    text.erase(0, lead);
    if (!text.empty() && text.back() == 'Z') text.pop_back();

    int y = 0;
    unsigned mo = 0, d = 0, hh = 0, mi = 0;
    double ss = 0.0;
    char sep = 0;
    int consumed = 0;
    if (std::sscanf(text.c_str(), "%4d-%2u-%2u%n", &y, &mo, &d, &consumed) != 3 || consumed != 10) {
        throw std::invalid_argument("not an ISO-8601 date: '" + raw + "'");
    }
    if (text.size() > 10) {
        sep = text[10];
        if (sep != 'T' && sep != ' ') throw std::invalid_argument("not an ISO-8601 date: '" + raw + "'");
        const std::string tail = text.substr(11);
        int n = 0;
        const int got = std::sscanf(tail.c_str(), "%2u:%2u%n", &hh, &mi, &n);
        if (got != 2) throw std::invalid_argument("bad ISO-8601 time in '" + raw + "'");
        std::string rest = tail.substr(static_cast<std::size_t>(n));
        if (!rest.empty()) {
            if (rest[0] != ':') throw std::invalid_argument("bad ISO-8601 time in '" + raw + "'");
            ss = csv::parse_double(rest.substr(1));
        }
        if (hh > 23 || mi > 59 || ss < 0.0 || ss >= 61.0) {
            throw std::invalid_argument("bad ISO-8601 time in '" + raw + "'");
        }
    }
    const std::chrono::year_month_day ymd{std::chrono::year{y}, std::chrono::month{mo},
                                          std::chrono::day{d}};
    if (!ymd.ok()) throw std::invalid_argument("invalid calendar date: '" + raw + "'");
    const double days = std::chrono::sys_days{ymd}.time_since_epoch().count();
    return days + (hh * 3600.0 + mi * 60.0 + ss) / 86400.0;
}

std::vector<double> read_launch_dates(std::istream& in) {
    std::vector<double> out;
    std::string line;
    bool first = true;
    while (std::getline(in, line)) {
        const bool blank = line.find_first_not_of(" \t\r") == std::string::npos;
        if (blank) continue;
        // Keep only the first CSV field.
        const std::string field = line.substr(0, line.find(','));
        try {
            out.push_back(parse_iso8601_days(field));
        } catch (const std::invalid_argument&) {
            if (!first) throw;
        }
        first = false;
    }
    return out;
}

}  // namespace spares::validation
