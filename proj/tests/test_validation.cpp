#include <cmath>
#include <stdexcept>
#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

#include "doctest.h"
#include "spares/validation.hpp"

using namespace spares;
using namespace spares::validation;

TEST_CASE("LHS puts one point in every stratum of every dimension") {
    const auto pts = lhs_unit(25, 3);
    REQUIRE(pts.size() == 25);
    for (std::size_t d = 0; d < kTradeDims; ++d) {
        std::set<int> strata;
        for (const auto& p : pts) {
            CHECK(p[d] >= 0.0);
            CHECK(p[d] < 1.0);
            strata.insert(static_cast<int>(p[d] * 25.0));
        }
        CHECK(strata.size() == 25);
    }
}

TEST_CASE("LHS marginals are flat") {
    const auto pts = lhs_unit(100, 9);
    for (std::size_t d = 0; d < kTradeDims; ++d) {
        std::array<int, 10> hist{};
        for (const auto& p : pts) ++hist[static_cast<std::size_t>(p[d] * 10.0)];
        for (int h : hist) CHECK(h == 10);
    }
}

TEST_CASE("LHS test problems respect the trade space") {
    const TradeSpace space = TradeSpace::defaults();
    const auto cases = lhs_sample(space, 25, 17);
    REQUIRE(cases.size() == 25);
    for (std::size_t i = 0; i < cases.size(); ++i) {
        const auto& c = cases[i];
        CHECK(c.launch.pt_launch_days >= 30.0);
        CHECK(c.launch.pt_launch_days <= 120.0);
        CHECK(c.constellation.h_plane_km >= 1000.0);
        CHECK(c.strategy.h_parking_km <= 1000.0);
        CHECK(c.constellation.lambda_sat_per_year >= 0.001);
        CHECK(c.constellation.lambda_sat_per_year <= 0.1);
        CHECK(c.constellation.n_plane >= 20);
        CHECK(c.constellation.n_plane <= 40);
        CHECK(c.strategy.n_parking >= 1);
        CHECK(c.strategy.n_parking <= 20);
        CHECK(c.strategy.k_q_parking <= 10);
        CHECK(c.launch.cap_launch == 34);
        for (std::size_t j = i + 1; j < cases.size(); ++j) CHECK_FALSE(c == cases[j]);
    }
    const auto one = lhs_sample(space, 1, 5);
    REQUIRE(one.size() == 1);
    CHECK(one[0].constellation.inclination_deg >= 30.0);
    CHECK(one[0].constellation.inclination_deg <= 70.0);
    CHECK_THROWS_AS(lhs_unit(0, 1), std::invalid_argument);
}

TEST_CASE("integer dimensions reach both end values") {
    const TradeSpace space = TradeSpace::defaults();
    std::array<double, kTradeDims> lo{}, hi{};
    hi.fill(0.999999);
    CHECK(map_point(space, lo).strategy.n_parking == 1);
    CHECK(map_point(space, hi).strategy.n_parking == 20);
    CHECK(map_point(space, hi).strategy.q_plane == 10);
}

TEST_CASE("reorder-point sizing") {
    ConstellationConfig cfg;
    LaunchParams lp;
    SpareStrategy partial{3, 792.3, 4, 1, 8, 1};

    ConstellationConfig quiet = cfg;
    quiet.lambda_sat_per_year = 1e-6;
    const auto tiny = size_reorder_points(quiet, partial, lp);
    REQUIRE(tiny.feasible);
    CHECK(tiny.s_plane == 1);
    CHECK(tiny.k_s_parking == 1);

    int prev_s = 0, prev_ks = 0;
    for (double lam : {0.005, 0.01, 0.02, 0.05, 0.08}) {
        ConstellationConfig c = cfg;
        c.lambda_sat_per_year = lam;
        const auto r = size_reorder_points(c, partial, lp);
        REQUIRE(r.feasible);
        CHECK(r.s_plane >= prev_s);
        CHECK(r.k_s_parking >= prev_ks);
        prev_s = r.s_plane;
        prev_ks = r.k_s_parking;

        SpareStrategy sized = partial;
        sized.s_plane = r.s_plane;
        sized.k_s_parking = r.k_s_parking;
        const auto m = evaluate_strategy(c, sized, lp);
        CHECK(std::pow(m.rho_plane, c.n_plane) >= 0.95);
        CHECK(std::pow(m.rho_parking, sized.n_parking) >= 0.95);
    }
    ConstellationConfig heavy = cfg;
    heavy.lambda_sat_per_year = 5.0;
    const auto none = size_reorder_points(heavy, SpareStrategy{1, 700, 1, 1, 1, 1}, lp);
    CHECK_FALSE(none.feasible);
    CHECK_FALSE(none.reason.empty());
}

TEST_CASE("relative error") {
    CHECK(relative_error(100.0, 100.0) == 0.0);
    CHECK(relative_error(100.0, 98.0) == doctest::Approx(2.0));
    CHECK_THROWS_AS(relative_error(0.0, 1.0), std::domain_error);
}

TEST_CASE("accuracy study plumbing") {
    ValidationOptions o;
    o.n_cases = 3;
    o.replications = 4;
    o.horizon_years = 3.0;
    o.warmup_years = 0.5;
    o.seed = 99;

    SUBCASE("model as its own observer gives zero error") {
        const auto rep = run_validation(o, [&](const sim::SimConfig& sc) {
            const auto m = evaluate_strategy(sc.constellation, sc.strategy, sc.launch, sc.earth);
            return model_outputs(sc, m);
        });
        CHECK(rep.cases.size() == 3);
        CHECK(rep.n_feasible + rep.n_infeasible == 3);
        for (double e : rep.mean_error_pct) CHECK(e == 0.0);
    }
    SUBCASE("results do not depend on the worker count") {
        o.jobs = 1;
        const auto a = run_validation(o);
        o.jobs = 4;
        const auto b = run_validation(o);
        for (std::size_t k = 0; k < 5; ++k) CHECK(a.mean_error_pct[k] == b.mean_error_pct[k]);
        std::ostringstream sa, sb;
        write_cases_csv(sa, a);
        write_cases_csv(sb, b);
        CHECK(sa.str() == sb.str());
    }
    SUBCASE("single case smoke run") {
        o.n_cases = 1;
        const auto rep = run_validation(o);
        CHECK(rep.cases.size() == 1);
        std::ostringstream s;
        write_summary_csv(s, rep);
        CHECK(s.str().rfind("output,mean_relative_error_pct", 0) == 0);
    }
}

TEST_CASE("launch-gap fit") {
    const std::vector<double> even = {0, 30, 60, 90, 120};
    CHECK(fit_launch_gaps(even) == 30.0);

    const std::vector<double> t = {3.5, 10.25, 71.0, 72.125, 200.0, 233.3};
    double sum = 0.0;
    for (std::size_t i = 1; i < t.size(); ++i) sum += t[i] - t[i - 1];
    CHECK(fit_launch_gaps(t) == sum / static_cast<double>(t.size() - 1));

    CHECK_THROWS_AS(fit_launch_gaps(std::vector<double>{1.0}), std::invalid_argument);
    CHECK_THROWS_AS(fit_launch_gaps(std::vector<double>{5.0, 1.0}), std::invalid_argument);
}

TEST_CASE("ISO-8601 parsing") {
    CHECK(parse_iso8601_days("1970-01-01") == 0.0);
    CHECK(parse_iso8601_days("1970-01-02T12:00:00Z") == 1.5);
    CHECK(parse_iso8601_days("2000-03-01") - parse_iso8601_days("2000-02-28") == 2.0);
    CHECK(parse_iso8601_days(" 2001-03-01 06:00 ") - parse_iso8601_days("2001-02-28") == 1.25);
    CHECK_THROWS_AS(parse_iso8601_days("2001-02-29"), std::invalid_argument);
    CHECK_THROWS_AS(parse_iso8601_days("yesterday"), std::invalid_argument);
    CHECK_THROWS_AS(parse_iso8601_days("2001-01-01T25:00"), std::invalid_argument);

    std::istringstream with_header("launch_date\n2020-01-01\n\n2020-01-31\n");
    CHECK(read_launch_dates(with_header).size() == 2);
    std::istringstream bad("2020-01-01\nnot-a-date\n");
    CHECK_THROWS_AS(read_launch_dates(bad), std::invalid_argument);
}

TEST_CASE("bundled launch data") {
    std::ifstream soyuz(std::string(SPARES_SOURCE_DIR) + "/data/soyuz_launches.csv");
    REQUIRE(soyuz);
    CHECK(fit_launch_gaps(read_launch_dates(soyuz)) == doctest::Approx(66.7).epsilon(1e-3));
    std::ifstream constant(std::string(SPARES_SOURCE_DIR) + "/tests/fixtures/constant_gaps.csv");
    REQUIRE(constant);
    CHECK(fit_launch_gaps(read_launch_dates(constant)) == 45.0);
}
