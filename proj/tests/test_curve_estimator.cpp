#include <doctest.h>

#include <cmath>

#include "curvest/bounds.hpp"
#include "curvest/curve_estimator.hpp"
#include "curvest/geometry.hpp"
#include "curvest/shapes.hpp"

using namespace curvest;

TEST_CASE("frozen estimate on circle-r5 at the table probe") {
    const auto& spec = find_curve("circle-r5");
    const double l = curve_length(spec);
    const std::uint64_t m = curve_bound(l, 0.1, 0.1).m_min;
    const PointCloud cloud = sample_curve_uniform(spec, m, 7);
    const CurveEstimate est = estimate_curve_curvature(cloud, {4, 3}, 0.1, 0.1, l);
    CHECK(est.kappa == doctest::Approx(0.2000000000392218).epsilon(1e-15));
    CHECK(est.witness1 == 818);
    CHECK(est.witness2 == 428);
    CHECK(est.epsilon_used == 0.1);
    CHECK(est.m_required == 1010);
    CHECK(est.m_provided == m);
    // witness contract
    const Point w1 = cloud.point(est.witness1), w2 = cloud.point(est.witness2);
    CHECK(distance(w1, {4, 3}) < est.epsilon_used);
    CHECK(distance(w2, {4, 3}) < est.epsilon_used);
    CHECK(opposite_side_test({4, 3}, w1, w2));
    CHECK(est.kappa == menger_curvature(w1, {4, 3}, w2));
}

TEST_CASE("unchecked variant on the explicit 3-point bracket") {
    PointCloud cloud(2);
    cloud.push_back({-0.1, 0.005});
    cloud.push_back({0.1, 0.005});
    cloud.push_back({5, 5});
    const CurveEstimate est = estimate_curve_curvature_unchecked(cloud, {0, 0}, 0.2);
    CHECK(est.kappa == menger_curvature({-0.1, 0.005}, {0, 0}, {0.1, 0.005}));
    // circle through the bracketing triple has radius 1.0025
    CHECK(est.kappa == doctest::Approx(1.0 / 1.0025).epsilon(1e-6));
    CHECK(est.m_required == 0);
    CHECK(((est.witness1 == 0 && est.witness2 == 1) ||
           (est.witness1 == 1 && est.witness2 == 0)));
}

TEST_CASE("straight line estimates zero curvature") {
    PointCloud cloud(2);
    for (int i = -10; i <= 10; ++i)
        if (i != 0) cloud.push_back({0.01 * i, 0.0});
    const CurveEstimate est = estimate_curve_curvature_unchecked(cloud, {0, 0}, 0.05);
    CHECK(est.kappa == 0.0);
}

TEST_CASE("error gates") {
    const auto& spec = find_curve("circle-r5");
    const double l = curve_length(spec);
    const PointCloud small = sample_curve_uniform(spec, 100, 1);
    CHECK_THROWS_AS(estimate_curve_curvature(small, {4, 3}, 0.1, 0.1, l),
                    InsufficientSamples);
    try {
        estimate_curve_curvature(small, {4, 3}, 0.1, 0.1, l);
    } catch (const InsufficientSamples& e) {
        CHECK(e.required == 1010);
    }
    // far-away probe has an empty neighborhood
    PointCloud cloud(2);
    cloud.push_back({0, 0});
    cloud.push_back({1, 0});
    CHECK_THROWS_AS(estimate_curve_curvature_unchecked(cloud, {10, 10}, 0.1),
                    NoBracketingPair);
    // one-sided neighborhood has no bracketing pair
    PointCloud oneside(2);
    oneside.push_back({0.01, 0});
    oneside.push_back({0.02, 0});
    CHECK_THROWS_AS(estimate_curve_curvature_unchecked(oneside, {0, 0}, 0.1),
                    NoBracketingPair);
}

TEST_CASE("epsilon_1 clamps to the curve length") {
    PointCloud cloud(2);
    for (int i = 0; i <= 40; ++i) cloud.push_back({0.025 * i, 0.0});
    const CurveEstimate est = estimate_curve_curvature(cloud, {0.5, 0}, 5.0, 0.5, 1.0);
    CHECK(est.epsilon_used == 1.0);
}

TEST_CASE("rigid-motion equivariance and scaling on a unit-circle cloud") {
    const PointCloud cloud = sample_curve_uniform(find_curve("circle-r1"), 4000, 9);
    const Point a{1.0, 0.0};
    const double k = estimate_curve_curvature_unchecked(cloud, a, 0.05).kappa;
    CHECK(k == doctest::Approx(1.0).epsilon(2e-3));

    const double ct = std::cos(0.7), st = std::sin(0.7), tx = 3.5, ty = -1.25;
    PointCloud moved(2);
    for (std::size_t i = 0; i < cloud.size(); ++i) {
        const Point p = cloud.point(i);
        moved.push_back({ct * p.x() - st * p.y() + tx, st * p.x() + ct * p.y() + ty});
    }
    const Point am{ct * a.x() - st * a.y() + tx, st * a.x() + ct * a.y() + ty};
    const double km = estimate_curve_curvature_unchecked(moved, am, 0.05).kappa;
    // rotated coordinates round before the selection, so slightly above
    // the pure-primitive 1e-9 band
    CHECK(std::abs(km - k) <= 1e-8 * k);

    const double s = 2.5;
    PointCloud scaled(2);
    for (std::size_t i = 0; i < cloud.size(); ++i) {
        const Point p = cloud.point(i);
        scaled.push_back({s * p.x(), s * p.y()});
    }
    const double ks =
        estimate_curve_curvature_unchecked(scaled, {s * a.x(), s * a.y()}, s * 0.05).kappa;
    CHECK(std::abs(ks - k / s) <= 1e-9 * (k / s));
}
