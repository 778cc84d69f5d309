#include "spares/config.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"

namespace spares::config {

using nlohmann::json;

namespace {

// Reads the keys of one JSON object, tracking which were consumed so that
// leftovers can be reported as unknown.
class Section {
public:
    Section(const json& obj, std::string path, bool all_required)
        : obj_(obj), path_(std::move(path)), required_(all_required) {
        if (!obj_.is_object()) throw ConfigError(path_, "expected an object");
    }

    template <typename T>
    void read(const char* key, T& out) {
        seen_.insert(key);
        const std::string where = path_ + "." + key;
        const auto it = obj_.find(key);
        if (it == obj_.end()) {
            if (required_) throw ConfigError(where, "missing required key");
            return;
        }
        if constexpr (std::is_integral_v<T>) {
            if (!it->is_number_integer()) throw ConfigError(where, "expected an integer");
            if constexpr (std::is_unsigned_v<T>) {
                if (it->is_number_unsigned() || it->template get<long long>() >= 0) {
                    out = it->template get<T>();
                    return;
                }
                throw ConfigError(where, "expected a non-negative integer");
            } else {
                out = it->template get<T>();
            }
        } else {
            if (!it->is_number()) throw ConfigError(where, "expected a number");
            out = it->template get<T>();
        }
    }

    const json* child(const char* key) {
        seen_.insert(key);
        const auto it = obj_.find(key);
        return it == obj_.end() ? nullptr : &*it;
    }

    void finish() const {
        for (const auto& [k, v] : obj_.items()) {
            if (!seen_.count(k)) throw ConfigError(path_ + "." + k, "unknown key");
        }
    }

    const std::string& path() const { return path_; }

private:
    const json& obj_;
    std::string path_;
    bool required_;
    std::set<std::string> seen_;
};

template <typename F>
void checked(const std::string& path, F&& fn) {
    try {
        fn();
    } catch (const ConfigError&) {
        throw;
    } catch (const std::exception& e) {
        throw ConfigError(path, e.what());
    }
}

const json& need(const json& root, const char* key) {
    const auto it = root.find(key);
    if (it == root.end()) throw ConfigError(key, "missing required section");
    return *it;
}

}  // namespace

RunConfig parse_config(const std::string& json_text) {
    json root;
    try {
        root = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw ConfigError("<root>", std::string("invalid JSON: ") + e.what());
    }
    if (!root.is_object()) throw ConfigError("<root>", "expected an object");

    static const std::set<std::string> known = {"constellation", "strategy",     "launch",
                                                "costs",         "satellite",    "earth",
                                                "simulation",    "optimization", "validation",
                                                "seed"};
    for (const auto& [k, v] : root.items()) {
        if (!known.count(k)) throw ConfigError(k, "unknown section");
    }

    RunConfig rc;
    {
        Section s(need(root, "constellation"), "constellation", true);
        auto& c = rc.constellation;
        s.read("h_plane_km", c.h_plane_km);
        s.read("inclination_deg", c.inclination_deg);
        s.read("n_plane", c.n_plane);
        s.read("n_sats", c.n_sats);
        s.read("lambda_sat_per_year", c.lambda_sat_per_year);
        s.read("n_days_per_year", c.n_days_per_year);
        s.finish();
        checked("constellation", [&] { c.validate(); });
    }
    {
        Section s(need(root, "launch"), "launch", true);
        s.read("mu_launch_days", rc.launch.mu_launch_days);
        s.read("pt_launch_days", rc.launch.pt_launch_days);
        s.read("cap_launch", rc.launch.cap_launch);
        s.finish();
        checked("launch", [&] { rc.launch.validate(); });
    }
    {
        Section s(need(root, "costs"), "costs", true);
        auto& c = rc.costs;
        s.read("p_sat_musd", c.p_sat_musd);
        s.read("p_holding_musd_per_sat_year", c.p_holding_musd_per_sat_year);
        s.read("p_launch_full_musd", c.p_launch_full_musd);
        s.read("p_launch_unit_musd", c.p_launch_unit_musd);
        s.read("eps_maneuvering_musd_per_kg", c.eps_maneuvering_musd_per_kg);
        s.finish();
        checked("costs", [&] { c.validate(); });
    }
    {
        Section s(need(root, "satellite"), "satellite", true);
        s.read("m_dry_kg", rc.satellite.m_dry_kg);
        s.read("v_exhaust_km_s", rc.satellite.v_exhaust_km_s);
        s.finish();
        checked("satellite", [&] { rc.satellite.validate(); });
    }
    if (root.contains("earth")) {
        Section s(root["earth"], "earth", false);
        s.read("mu_km3_s2", rc.earth.mu_km3_s2);
        s.read("r_earth_km", rc.earth.r_earth_km);
        s.read("j2", rc.earth.j2);
        s.finish();
        checked("earth", [&] { rc.earth.validate(); });
    }
    if (root.contains("strategy")) {
        // A strategy is all-or-nothing.
        Section s(root["strategy"], "strategy", true);
        SpareStrategy st;
        s.read("n_parking", st.n_parking);
        s.read("h_parking_km", st.h_parking_km);
        s.read("q_plane", st.q_plane);
        s.read("s_plane", st.s_plane);
        s.read("k_q_parking", st.k_q_parking);
        s.read("k_s_parking", st.k_s_parking);
        s.finish();
        checked("strategy", [&] { st.validate(rc.constellation); });
        rc.strategy = st;
    }
    if (root.contains("simulation")) {
        Section s(root["simulation"], "simulation", false);
        s.read("horizon_years", rc.simulation.horizon_years);
        s.read("warmup_years", rc.simulation.warmup_years);
        s.read("replications", rc.simulation.replications);
        s.finish();
    }
    if (root.contains("optimization")) {
        Section s(root["optimization"], "optimization", false);
        s.read("rho_target", rc.rho_target);
        s.read("inplane_s_max", rc.inplane_s_max);
        if (const json* b = s.child("bounds")) {
            Section bs(*b, "optimization.bounds", false);
            auto& v = rc.bounds;
            bs.read("n_parking_lo", v.n_parking_lo);
            bs.read("n_parking_hi", v.n_parking_hi);
            bs.read("h_parking_lo_km", v.h_parking_lo_km);
            bs.read("h_parking_hi_km", v.h_parking_hi_km);
            bs.read("q_plane_lo", v.q_plane_lo);
            bs.read("q_plane_hi", v.q_plane_hi);
            bs.read("s_plane_lo", v.s_plane_lo);
            bs.read("s_plane_hi", v.s_plane_hi);
            bs.read("k_q_lo", v.k_q_lo);
            bs.read("k_q_hi", v.k_q_hi);
            bs.read("k_s_lo", v.k_s_lo);
            bs.read("k_s_hi", v.k_s_hi);
            bs.finish();
        }
        if (const json* g = s.child("ga")) {
            Section gs(*g, "optimization.ga", false);
            auto& v = rc.ga;
            gs.read("population", v.population);
            gs.read("generations", v.generations);
            gs.read("elitism", v.elitism);
            gs.read("tournament", v.tournament);
            gs.read("crossover_rate", v.crossover_rate);
            gs.read("mutation_rate", v.mutation_rate);
            gs.read("h_mutation_sigma_km", v.h_mutation_sigma_km);
            gs.read("restarts", v.restarts);
            gs.finish();
        }
        s.finish();
        checked("optimization", [&] { rc.problem().validate(); });
    }
    if (root.contains("validation")) {
        Section s(root["validation"], "validation", false);
        s.read("n_cases", rc.validation.n_cases);
        s.read("requirement", rc.validation.requirement);
        s.read("horizon_years", rc.validation.horizon_years);
        s.read("warmup_years", rc.validation.warmup_years);
        s.read("replications", rc.validation.replications);
        s.finish();
        const auto& v = rc.validation;
        if (v.n_cases < 1) throw ConfigError("validation.n_cases", "must be >= 1");
        if (!(v.requirement > 0.0 && v.requirement < 1.0)) {
            throw ConfigError("validation.requirement", "must be in (0, 1)");
        }
        if (!(v.horizon_years > v.warmup_years && v.warmup_years >= 0.0)) {
            throw ConfigError("validation.horizon_years", "must exceed warmup_years >= 0");
        }
        if (v.replications < 1) throw ConfigError("validation.replications", "must be >= 1");
    }
    if (root.contains("seed")) {
        const json& s = root["seed"];
        if (!s.is_number_unsigned()) throw ConfigError("seed", "expected a non-negative integer");
        rc.seed = s.get<std::uint64_t>();
    }
    {
        const auto& v = rc.simulation;
        if (!(v.horizon_years > v.warmup_years && v.warmup_years >= 0.0)) {
            throw ConfigError("simulation.horizon_years", "must exceed warmup_years >= 0");
        }
        if (v.replications < 1) throw ConfigError("simulation.replications", "must be >= 1");
    }
    return rc;
}

RunConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError(path, "cannot open config file");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config(buf.str());
}

opt::OptimizationProblem RunConfig::problem() const {
    opt::OptimizationProblem p;
    p.constellation = constellation;
    p.launch = launch;
    p.costs = costs;
    p.satellite = satellite;
    p.earth = earth;
    p.rho_target = rho_target;
    p.bounds = bounds;
    p.ga = ga;
    p.inplane_s_max = inplane_s_max;
    return p;
}

sim::SimConfig RunConfig::sim_config() const {
    if (!strategy) throw ConfigError("strategy", "missing required section");
    sim::SimConfig sc;
    sc.constellation = constellation;
    sc.strategy = *strategy;
    sc.launch = launch;
    sc.costs = costs;
    sc.satellite = satellite;
    sc.earth = earth;
    sc.horizon_years = simulation.horizon_years;
    sc.warmup_years = simulation.warmup_years;
    sc.replications = simulation.replications;
    sc.seed = seed;
    return sc;
}

validation::ValidationOptions RunConfig::validation_options(unsigned jobs) const {
    validation::ValidationOptions o;
    o.n_cases = validation.n_cases;
    o.requirement = validation.requirement;
    o.horizon_years = validation.horizon_years;
    o.warmup_years = validation.warmup_years;
    o.replications = validation.replications;
    o.seed = seed;
    o.jobs = jobs;
    o.launch = launch;
    o.costs = costs;
    o.satellite = satellite;
    o.earth = earth;
    return o;
}

}  // namespace spares::config
