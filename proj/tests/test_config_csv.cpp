#include <functional>
#include <fstream>
#include <limits>
#include <sstream>

#include "doctest.h"
#include "json.hpp"
#include "spares/config.hpp"
#include "spares/csv.hpp"

using namespace spares;

namespace {

std::string case_study_text() {
    std::ifstream in(std::string(SPARES_SOURCE_DIR) + "/data/case_study.json");
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

std::string edited(const std::function<void(nlohmann::json&)>& edit) {
    auto j = nlohmann::json::parse(case_study_text());
    edit(j);
    return j.dump();
}

std::string error_path(const std::string& text) {
    try {
        config::parse_config(text);
    } catch (const config::ConfigError& e) {
        return e.path();
    }
    return "";
}

}  // namespace

TEST_CASE("bundled case study reproduces the reference parameters") {
    const auto rc = config::parse_config(case_study_text());
    CHECK(rc.constellation.h_plane_km == 1200.0);
    CHECK(rc.constellation.inclination_deg == 50.0);
    CHECK(rc.constellation.n_plane == 40);
    CHECK(rc.constellation.n_sats == 40);
    CHECK(rc.constellation.lambda_sat_per_year == 0.05);
    CHECK(rc.launch.mu_launch_days == 66.7);
    CHECK(rc.launch.pt_launch_days == 90.0);
    CHECK(rc.launch.cap_launch == 34);
    CHECK(rc.costs.p_sat_musd == 0.5);
    CHECK(rc.costs.p_holding_musd_per_sat_year == 0.5);
    CHECK(rc.costs.p_launch_full_musd == 47.6);
    CHECK(rc.costs.p_launch_unit_musd == 10.0);
    CHECK(rc.costs.eps_maneuvering_musd_per_kg == 0.001);
    CHECK(rc.satellite.m_dry_kg == 150.0);
    CHECK(rc.satellite.v_exhaust_km_s == 2.16);
    REQUIRE(rc.strategy);
    CHECK(*rc.strategy == SpareStrategy{3, 792.3, 4, 3, 8, 8});
    CHECK(rc.rho_target == 0.95);
}

TEST_CASE("config errors name the offending key") {
    CHECK(error_path(edited([](auto& j) { j["constellation"].erase("n_sats"); })) == "constellation.n_sats");
    CHECK(error_path(edited([](auto& j) { j["launch"]["colour"] = 1; })) == "launch.colour");
    CHECK(error_path(edited([](auto& j) { j["bogus"] = 1; })) == "bogus");
    CHECK(error_path(edited([](auto& j) { j.erase("costs"); })) == "costs");
    CHECK(error_path(edited([](auto& j) { j["strategy"]["q_plane"] = 2.5; })) == "strategy.q_plane");
    CHECK(error_path(edited([](auto& j) { j["strategy"]["h_parking_km"] = 1500.0; })) == "strategy");
    CHECK(error_path(edited([](auto& j) { j["optimization"]["ga"]["restarts"] = 0; })) == "optimization");
    CHECK(error_path(edited([](auto& j) { j["optimization"]["ga"]["speed"] = 3; })) == "optimization.ga.speed");
    CHECK(error_path(edited([](auto& j) { j["validation"]["requirement"] = 1.5; })) == "validation.requirement");
    CHECK(error_path(edited([](auto& j) { j["seed"] = -4; })) == "seed");
    CHECK(error_path("{not json") == "<root>");
}

TEST_CASE("optional sections keep defaults") {
    const auto rc = config::parse_config(edited([](auto& j) {
        j.erase("strategy");
        j.erase("simulation");
        j.erase("optimization");
        j["earth"] = {{"j2", 0.0010827}};
    }));
    CHECK_FALSE(rc.strategy);
    CHECK(rc.earth.j2 == 0.0010827);
    CHECK(rc.earth.r_earth_km == 6378.137);
    CHECK(rc.ga.population == 60);
    CHECK_THROWS_AS(rc.sim_config(), config::ConfigError);
}

TEST_CASE("CSV numbers round-trip exactly") {
    for (double v : {0.1, 1.0 / 3.0, 319.13269413827413, -2.5e-300, 6.02214076e23, 0.0,
                     std::numeric_limits<double>::denorm_min(), 1e-12}) {
        CHECK(csv::parse_double(csv::format_double(v)) == v);
    }
    CHECK_THROWS(csv::parse_double("1.5x"));
    CHECK_THROWS(csv::parse_double(""));

    std::ostringstream out;
    csv::write_row(out, {"a", "b"});
    csv::write_row(out, {csv::format_double(0.1), csv::format_double(2.0 / 7.0)});
    std::istringstream in(out.str());
    const auto t = csv::read_table(in);
    CHECK(t.header == std::vector<std::string>{"a", "b"});
    CHECK(csv::parse_double(t.rows[0][t.column("b")]) == 2.0 / 7.0);
    CHECK_THROWS(t.column("c"));
    CHECK(csv::split_line("x,,y\r") == std::vector<std::string>{"x", "", "y"});
}
