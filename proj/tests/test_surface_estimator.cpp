#include <doctest.h>

#include <cmath>

#include "curvest/bounds.hpp"
#include "curvest/shapes.hpp"
#include "curvest/surface_estimator.hpp"

using namespace curvest;

TEST_CASE("conjugate_set on an exact collinear triple") {
    PointCloud cloud(3);
    cloud.push_back({1, 0, 0});  // y
    cloud.push_back({-2, 0, 0}); // exactly collinear through a, deficit 0
    cloud.push_back({0, 3, 1});
    const auto set = conjugate_set(cloud, {0, 0, 0}, {1, 0, 0});
    REQUIRE(!set.empty());
    CHECK(set[0].index == 1);
    CHECK(set[0].value == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("conjugate_set error cases") {
    PointCloud cloud(3);
    cloud.push_back({1, 0, 0});
    CHECK_THROWS_AS(conjugate_set(cloud, {0, 0, 0}, {1, 0, 0}), EmptyConjugateSet);
    CHECK_THROWS_AS(conjugate_set(cloud, {1, 0, 0}, {1, 0, 0}), DegeneratePair);
    PointCloud flat(2);
    flat.push_back({1, 0});
    CHECK_THROWS_AS(conjugate_set(flat, {0, 0}, {1, 0}), DimensionError);
}

TEST_CASE("flat plane: both principal curvatures vanish") {
    const PointCloud cloud = sample_surface_uniform(find_surface("plane"), 3000, 17);
    const Point a{0.5, 0.5, 0.0};
    const Principal1 p1 = principal_curvature_1(cloud, a, 0.2);
    // discrete clouds only reach exact 0 once the conjugate triples fall
    // below the collinearity clamp; at this density the floor is ~1e-6
    CHECK(p1.kappa1 <= 1e-4);
    // near-collinear witness chords force the covariance-normal fallback
    const Principal2 p2 = principal_curvature_2(cloud, a, cloud.point(p1.q_index),
                                                cloud.point(p1.q_prime_index), 0.2);
    CHECK(p2.kappa2 <= 1e-4);
}

TEST_CASE("unit sphere: kappa1 near 1") {
    const PointCloud cloud = sample_surface_uniform(find_surface("sphere-r1"), 6000, 23);
    const Principal1 p1 = principal_curvature_1(cloud, {0, 0, 1}, 0.15);
    CHECK(p1.kappa1 == doctest::Approx(1.0).epsilon(0.1));
}

TEST_CASE("full pipeline on the plane patch with the sample gate") {
    const auto& spec = find_surface("plane");
    const double s = surface_area(spec);
    const double eps = 0.5, p = 0.1, theta = 0.05;
    const std::uint64_t m = surface_bound(s, eps, theta, p).m_min;
    const PointCloud cloud = sample_surface_uniform(spec, m + 1, 31);
    const SurfaceEstimate est =
        estimate_surface_curvature(cloud, {0.5, 0.5, 0.0}, eps, p, s, theta);
    CHECK(est.gaussian == est.kappa1 * est.kappa2);
    CHECK(est.mean == (est.kappa1 + est.kappa2) / 2.0);
    CHECK(est.kappa1 <= 1e-4);
    CHECK(est.kappa2 <= 1e-4);
    CHECK(est.theta_used == theta);
    CHECK(est.m_required == m);
    CHECK(est.m_provided == m + 1);
}

TEST_CASE("sample gate rejects undersized clouds with the required count") {
    const auto& spec = find_surface("sphere-r5");
    const double s = surface_area(spec);
    const PointCloud cloud = sample_surface_uniform(spec, 100, 1);
    CHECK_THROWS_AS(estimate_surface_curvature(cloud, {0, 0, 5}, 0.1, 0.1, s),
                    InsufficientSamples);
    try {
        estimate_surface_curvature(cloud, {0, 0, 5}, 0.1, 0.1, s);
    } catch (const InsufficientSamples& e) {
        CHECK(e.required == 76953423);
    }
}

TEST_CASE("dimension and domain gates") {
    PointCloud flat(2);
    flat.push_back({0, 0});
    CHECK_THROWS_AS(principal_curvature_1(flat, {0, 0}, 0.1), DimensionError);
    PointCloud cloud(3);
    cloud.push_back({1, 0, 0});
    CHECK_THROWS_AS(principal_curvature_1(cloud, {0, 0, 0}, -1.0), DomainError);
    CHECK_THROWS_AS(principal_curvature_1(cloud, {5, 5, 5}, 0.1), EmptyNeighborhood);
    CHECK_THROWS_AS(estimate_surface_curvature(cloud, {0, 0, 0}, 0.1, 0.1, -4.0),
                    DomainError);
}

TEST_CASE("neighborhood-restricted score scope stays a valid estimate") {
    const PointCloud cloud = sample_surface_uniform(find_surface("sphere-r1"), 6000, 23);
    const Point a{0, 0, 1};
    const Principal1 p1 = principal_curvature_1(cloud, a, 0.15);
    SurfaceOptions opts;
    opts.restrict_score_to_neighborhood = true;
    const Principal2 p2 = principal_curvature_2(cloud, a, cloud.point(p1.q_index),
                                                cloud.point(p1.q_prime_index), 0.15, opts);
    CHECK(p2.kappa2 >= 0.0);
    CHECK(std::isfinite(p2.kappa2));
    CHECK(p2.b_index < cloud.size());
    CHECK(p2.b_prime_index < cloud.size());
}
