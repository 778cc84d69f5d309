#include <stdexcept>
#include <cmath>

#include "doctest.h"
#include "spares/lead_time.hpp"
#include "spares/quadrature.hpp"

using namespace spares;

TEST_CASE("Gauss-Legendre integrates polynomials of degree 2n-1 exactly") {
    const auto rule = quadrature::gauss_legendre(8);
    double wsum = 0.0;
    for (double w : rule.weights) wsum += w;
    CHECK(wsum == doctest::Approx(2.0).epsilon(1e-14));
    // x^14 on [0, 2] = 2^15 / 15
    const double got = quadrature::integrate(rule, 0.0, 2.0, [](double x) { return std::pow(x, 14); });
    CHECK(got == doctest::Approx(std::pow(2.0, 15) / 15.0).epsilon(1e-13));
}

TEST_CASE("32-point rule integrates smooth functions") {
    const double got = quadrature::integrate(quadrature::legendre32(), 0.0, 3.0, [](double x) { return std::exp(-x); });
    CHECK(got == doctest::Approx(1.0 - std::exp(-3.0)).epsilon(1e-14));
}

TEST_CASE("Gauss-Laguerre moments") {
    const auto& rule = quadrature::laguerre64();
    double m0 = 0.0, m1 = 0.0, m3 = 0.0, e = 0.0;
    for (std::size_t k = 0; k < rule.nodes.size(); ++k) {
        m0 += rule.weights[k];
        m1 += rule.weights[k] * rule.nodes[k];
        m3 += rule.weights[k] * std::pow(rule.nodes[k], 3);
        e += rule.weights[k] * std::exp(-rule.nodes[k]);
    }
    CHECK(m0 == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(m1 == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(m3 == doctest::Approx(6.0).epsilon(1e-11));
    CHECK(e == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("shifted exponential lead time") {
    const auto lt = LeadTimeDistribution::shifted_exponential(90.0, 66.7);
    CHECK(lt.mean() == doctest::Approx(156.7));
    CHECK(LeadTimeDistribution::shifted_exponential(0.0, 66.7).mean() == doctest::Approx(66.7));
    CHECK(lt.pdf(89.0) == 0.0);
    CHECK(lt.cdf(89.0) == 0.0);
    CHECK(lt.expectation([](double t) { return t; }) == doctest::Approx(156.7).epsilon(1e-12));
    CHECK(lt.cdf(90.0 + 66.7) == doctest::Approx(1.0 - std::exp(-1.0)));
    CHECK_THROWS_AS(LeadTimeDistribution::shifted_exponential(-1.0, 10.0), std::invalid_argument);
    CHECK_THROWS_AS(LeadTimeDistribution::shifted_exponential(1.0, 0.0), std::invalid_argument);
}

TEST_CASE("mixture of uniforms") {
    const auto lt = LeadTimeDistribution::mixture({0.9, 0.09, 0.009}, {{1, 11}, {11, 21}, {21, 31}});
    CHECK(lt.neglected_mass() == doctest::Approx(0.001).epsilon(1e-12));
    const double mean = (0.9 * 6 + 0.09 * 16 + 0.009 * 26) / 0.999;
    CHECK(lt.mean() == doctest::Approx(mean).epsilon(1e-13));
    CHECK(lt.expectation([](double t) { return t; }) == doctest::Approx(mean).epsilon(1e-13));
    CHECK(lt.cdf(31.0) == doctest::Approx(1.0));
    CHECK(lt.cdf(0.5) == 0.0);
    CHECK(lt.lower_bound() == 1.0);
    CHECK(lt.sample(0.0, 0.5) == doctest::Approx(6.0));
    CHECK(lt.sample(0.99999, 0.5) == doctest::Approx(26.0));
    CHECK_THROWS_AS(LeadTimeDistribution::mixture({0.5}, {{2, 1}}), std::invalid_argument);
    CHECK_THROWS_AS(LeadTimeDistribution::mixture({0.5, 0.5}, {{1, 2}}), std::invalid_argument);
}
