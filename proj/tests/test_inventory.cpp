#include <cmath>
#include <stdexcept>
#include "doctest.h"
#include "oracles.hpp"
#include "spares/inventory.hpp"

using namespace spares::inventory;

TEST_CASE("expected shortage reference values") {
    CHECK(expected_shortage(0, 1.0) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(expected_shortage(2, 1.0) == doctest::Approx(oracle::shortage_tail_sum(2, 1.0)).epsilon(1e-12));
    CHECK(expected_shortage(2, 1.0) == doctest::Approx(0.10364).epsilon(1e-4));
    CHECK(expected_shortage(10, 0.01) < 1e-12);
    CHECK(expected_shortage(5, 0.0) == 0.0);
}

TEST_CASE("expected shortage agrees with brute-force tail sums on a grid") {
    for (int s = 0; s <= 40; s += 3) {
        for (double m : {1e-4, 0.01, 0.3, 1.0, 2.5, 7.0, 15.0, 33.0}) {
            const double ref = oracle::shortage_tail_sum(s, m);
            CHECK(std::abs(expected_shortage(s, m) - ref) <= 1e-10);
        }
    }
}

TEST_CASE("expected shortage is nonincreasing in s") {
    for (double m : {0.2, 1.0, 6.0}) {
        double prev = expected_shortage(0, m);
        for (int s = 1; s < 30; ++s) {
            const double es = expected_shortage(s, m);
            CHECK(es <= prev);
            prev = es;
        }
    }
}

TEST_CASE("fill rate") {
    CHECK(fill_rate(0.0, 4) == 1.0);
    CHECK(fill_rate(0.10364, 4) == doctest::Approx(1.0 - 0.10364 / 4.0).epsilon(1e-15));
    CHECK(fill_rate(0.10364, 4) == doctest::Approx(0.97409).epsilon(1e-5));
    CHECK(fill_rate(4.0, 4) == 0.0);
    CHECK_THROWS_AS(fill_rate(-0.1, 4), std::invalid_argument);
    CHECK_THROWS_AS(fill_rate(0.1, 0), std::invalid_argument);
}

TEST_CASE("mean stock") {
    CHECK(mean_stock({3, 4}, 0.0) == 5.5);
    CHECK(mean_stock({4, 20}, 2.0) == 12.5);
    CHECK(mean_stock({5, 4}, 0.7) - mean_stock({4, 4}, 0.7) == doctest::Approx(1.0));
    CHECK_THROWS_AS(mean_stock({-1, 4}, 0.0), std::invalid_argument);
}

TEST_CASE("Poisson pmf sums to one") {
    double acc = 0.0;
    for (int k = 0; k < 200; ++k) acc += poisson_pmf(k, 12.3);
    CHECK(acc == doctest::Approx(1.0).epsilon(1e-13));
    CHECK(poisson_pmf(0, 0.0) == 1.0);
    CHECK(poisson_pmf(3, 0.0) == 0.0);
}
