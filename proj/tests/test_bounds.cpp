#include <doctest.h>

#include <cmath>

#include "curvest/bounds.hpp"
#include "curvest/errors.hpp"
#include "curvest/rng.hpp"

using namespace curvest;

TEST_CASE("generic_pair_bound matches hand-checked cases") {
    CHECK(generic_pair_bound(0.5, 1.0, 0.5).m_min == 3);
    CHECK(oracle_min_m(0.5, 1.0, 0.5) == 3);
    CHECK(generic_pair_bound(0.5, 1.0, 1e-12).m_min == 2);
    CHECK(oracle_min_m(0.99, 1.0, 0.01) == 2);
    CHECK(generic_pair_bound(0.1, 10.0, 0.9).m_min == 31);
    CHECK(oracle_min_m(0.1, 10.0, 0.9) == 31);
}

TEST_CASE("generic_pair_bound domain errors") {
    CHECK_THROWS_AS(generic_pair_bound(0.0, 1.0, 0.5), DomainError);
    CHECK_THROWS_AS(generic_pair_bound(1.0, 1.0, 0.5), DomainError);
    CHECK_THROWS_AS(generic_pair_bound(0.5, 1.0, 0.0), DomainError);
    CHECK_THROWS_AS(generic_pair_bound(0.5, 1.0, 1.0), DomainError);
}

TEST_CASE("curve_bound golden: circle of radius 5 at eps = p = 0.1") {
    const double l = 10.0 * M_PI;
    const BoundResult r = curve_bound(l, 0.1, 0.1);
    CHECK(r.m_min == 1010);
    CHECK(r.raw_value == doctest::Approx(1009.9332230901211).epsilon(1e-12));
    CHECK(r.formula == BoundFormula::CurveThm);
    // the printed-formula grouping is the smaller, non-default reading
    const BoundResult printed = curve_bound(l, 0.1, 0.1, LogGrouping::Printed);
    CHECK(printed.m_min == 383);
    CHECK(printed.m_min < r.m_min);
}

TEST_CASE("curve_bound substitution identity at l = 2 eps") {
    const BoundResult c = curve_bound(0.2, 0.1, 0.3);
    const BoundResult g = generic_pair_bound(0.5, 1.0, 0.3);
    CHECK(c.m_min == g.m_min);
    CHECK(c.raw_value == doctest::Approx(g.raw_value).epsilon(1e-12));
}

TEST_CASE("curve_bound rejects l < eps") {
    CHECK_THROWS_AS(curve_bound(0.05, 0.1, 0.5), DomainError);
}

TEST_CASE("surface_bound goldens at eps = p = 0.1, theta = 0.01") {
    CHECK(surface_bound(100.0 * M_PI, 0.1, 0.01, 0.1).m_min == 76953423);
    CHECK(surface_bound(100.0 * M_PI, 0.1, 0.01, 0.1).raw_value ==
          doctest::Approx(76953422.364188924).epsilon(1e-12));
    CHECK(surface_bound(178.38963814798259, 0.1, 0.01, 0.1).m_min == 41677508);
    CHECK(surface_bound(22.627416997969522, 0.1, 0.01, 0.1).m_min == 4352110);
    CHECK(surface_bound(49.298716845417417, 0.1, 0.01, 0.1).m_min == 10249759);
}

TEST_CASE("surface_bound monotonicity probes") {
    const std::uint64_t at_p01 = surface_bound(100.0 * M_PI, 0.1, 0.01, 0.1).m_min;
    const std::uint64_t at_p05 = surface_bound(100.0 * M_PI, 0.1, 0.01, 0.5).m_min;
    CHECK(at_p05 > at_p01);
    const std::uint64_t half_eps = surface_bound(100.0 * M_PI, 0.05, 0.01, 0.1).m_min;
    CHECK(half_eps > at_p01);
}

TEST_CASE("closed form never undershoots the oracle") {
    Rng rng(21);
    for (int t = 0; t < 200; ++t) {
        const double alpha = rng.uniform(0.05, 0.9);
        const double n = rng.uniform(1.0, 200.0);
        const double p = rng.uniform(0.01, 0.99);
        const std::uint64_t closed = generic_pair_bound(alpha, n, p).m_min;
        const std::uint64_t oracle = oracle_min_m(alpha, n, p);
        REQUIRE(closed >= oracle);
        REQUIRE(closed - oracle <= 1);
    }
}

TEST_CASE("radicand_positive holds whenever l >= eps") {
    CHECK(radicand_positive(1.0, 0.5, 0.5));
    CHECK(radicand_positive(10.0 * M_PI, 0.1, 0.1));
    Rng rng(22);
    for (int t = 0; t < 500; ++t) {
        const double l = std::exp(rng.uniform(-4, 6));
        const double eps = l * rng.uniform(1e-6, 1.0);
        const double p = rng.uniform(1e-6, 1.0 - 1e-6);
        REQUIRE(radicand_positive(l, eps, p));
    }
}
