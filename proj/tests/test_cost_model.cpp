#include <stdexcept>
#include "doctest.h"
#include "spares/cost_model.hpp"

using namespace spares;

TEST_CASE("launch price takes the cheaper of full rocket and per-unit") {
    const CostParams cp;
    CHECK(launch_price(32, cp, 34) == doctest::Approx(47.6));
    CHECK(launch_price(4, cp, 34) == doctest::Approx(40.0));
    CHECK(launch_price(1, cp, 34) == doctest::Approx(10.0));
    CHECK_THROWS_AS(launch_price(35, cp, 34), std::invalid_argument);
    CHECK(launch_price(100, cp, 34, CapacityCheck::ignore) == doctest::Approx(47.6));
    CHECK_THROWS_AS(launch_price(0, cp, 34), std::invalid_argument);
}

TEST_CASE("case-study multi-echelon cost") {
    const ConstellationConfig cfg;
    const SpareStrategy st{3, 792.3, 4, 3, 8, 8};
    const LaunchParams lp;
    const CostParams cp;
    const auto m = evaluate_strategy(cfg, st, lp);
    const auto tr = parking_transfer(cfg, st, SatelliteParams{});
    const auto c = tessac(cfg, st, m, tr, cp, lp);
    CHECK(c.tessac == doctest::Approx(319.1).epsilon(0.01));
    CHECK(c.manufacturing == doctest::Approx(40.0).epsilon(1e-12));
    // 80 failures per year in batches of 32 at the full-rocket price.
    const double launches = m.lambda_parking_batches_per_day * 4 / 32 * 3 * 365.0;
    CHECK(c.launch == doctest::Approx(47.6 * launches).epsilon(1e-12));
    CHECK(c.launch == doctest::Approx(80.0 / 32.0 * 47.6).epsilon(1e-12));
    CHECK(c.maneuvering == doctest::Approx(tr.fuel_mass_kg * 80.0 * 0.001).epsilon(1e-12));
    CHECK(c.tessac == doctest::Approx(c.manufacturing + c.holding + c.launch + c.maneuvering));
}

TEST_CASE("case-study in-plane-only cost") {
    const ConstellationConfig cfg;
    const LaunchParams lp;
    const CostParams cp;
    const inventory::SQPolicy policy{4, 20};
    const auto m = evaluate_inplane_only(cfg, policy, lp);
    const auto c = tessac_inplane_only(cfg, policy, m, cp, lp);
    CHECK(c.tessac == doctest::Approx(503.2).epsilon(0.01));
    CHECK(c.maneuvering == 0.0);
    // 80 failures per year in batches of 20: 4 launches at min(47.6, 200).
    CHECK(c.launch == doctest::Approx(4.0 * 47.6).epsilon(1e-12));
    CHECK(c.manufacturing == doctest::Approx(0.5 * 80.0).epsilon(1e-12));
}

TEST_CASE("vanishing failure rate leaves only holding") {
    ConstellationConfig cfg;
    cfg.lambda_sat_per_year = 1e-12;
    const SpareStrategy st{3, 792.3, 4, 3, 8, 8};
    const LaunchParams lp;
    const CostParams cp;
    const auto m = evaluate_strategy(cfg, st, lp);
    const auto c = tessac(cfg, st, m, parking_transfer(cfg, st, SatelliteParams{}), cp, lp);
    CHECK(c.manufacturing < 1e-8);
    CHECK(c.launch < 1e-8);
    CHECK(c.maneuvering < 1e-8);
    const double floor = 0.5 * ((4.0 / 2 + 3 + 0.5) * 40 + (8.0 / 2 + 8 + 0.5) * 4 * 3);
    CHECK(c.tessac == doctest::Approx(floor).epsilon(1e-8));

    const inventory::SQPolicy policy{4, 20};
    const auto mi = evaluate_inplane_only(cfg, policy, lp);
    CHECK(tessac_inplane_only(cfg, policy, mi, cp, lp).tessac ==
          doctest::Approx(0.5 * (10.0 + 4 + 0.5) * 40).epsilon(1e-8));
}
