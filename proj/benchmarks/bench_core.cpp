#include <benchmark/benchmark.h>

#include <cmath>

#include "curvest/bounds.hpp"
#include "curvest/geometry.hpp"
#include "curvest/rng.hpp"
#include "curvest/shapes.hpp"
#include "curvest/spatial_grid.hpp"
#include "curvest/surface_estimator.hpp"

using namespace curvest;

namespace {

const PointCloud& sphere_cloud() {
    static const PointCloud cloud =
        sample_surface_uniform(find_surface("sphere-r5"), 400000, 42);
    return cloud;
}

void BM_menger(benchmark::State& state) {
    Rng rng(1);
    Point a{rng.uniform(-5, 5), rng.uniform(-5, 5), rng.uniform(-5, 5)};
    Point b{rng.uniform(-5, 5), rng.uniform(-5, 5), rng.uniform(-5, 5)};
    Point c{rng.uniform(-5, 5), rng.uniform(-5, 5), rng.uniform(-5, 5)};
    for (auto _ : state) benchmark::DoNotOptimize(menger_curvature(a, b, c));
}
BENCHMARK(BM_menger);

void BM_curve_bound(benchmark::State& state) {
    for (auto _ : state)
        benchmark::DoNotOptimize(curve_bound(10.0 * M_PI, 0.1, 0.1).m_min);
}
BENCHMARK(BM_curve_bound);

void BM_surface_bound(benchmark::State& state) {
    for (auto _ : state)
        benchmark::DoNotOptimize(surface_bound(100.0 * M_PI, 0.1, 0.01, 0.1).m_min);
}
BENCHMARK(BM_surface_bound);

void BM_grid_build(benchmark::State& state) {
    const PointCloud& cloud = sphere_cloud();
    for (auto _ : state) {
        SpatialGrid grid(cloud);
        benchmark::DoNotOptimize(grid);
    }
}
BENCHMARK(BM_grid_build)->Unit(benchmark::kMillisecond);

void BM_radius_query(benchmark::State& state) {
    const PointCloud& cloud = sphere_cloud();
    const SpatialGrid grid(cloud);
    Rng rng(3);
    for (auto _ : state) {
        const std::size_t i = static_cast<std::size_t>(rng.uniform() * cloud.size());
        benchmark::DoNotOptimize(
            grid.radius_query(cloud, cloud.point(i), 0.1, cloud.coincident_tol()));
    }
}
BENCHMARK(BM_radius_query);

void BM_deficit_band(benchmark::State& state) {
    const PointCloud& cloud = sphere_cloud();
    const SpatialGrid grid(cloud);
    Rng rng(4);
    const Point a = cloud.point(7);
    for (auto _ : state) {
        const std::size_t i = static_cast<std::size_t>(rng.uniform() * cloud.size());
        const Point y = cloud.point(i);
        if (distance(y, a) <= cloud.coincident_tol()) continue;
        benchmark::DoNotOptimize(grid.deficit_band(cloud, a, y,
                                                   conjugate_tol(distance(y, a)),
                                                   cloud.coincident_tol()));
    }
}
BENCHMARK(BM_deficit_band)->Unit(benchmark::kMicrosecond);

void BM_sample_curve(benchmark::State& state) {
    const auto& spec = find_curve("circle-r5");
    std::uint64_t seed = 0;
    for (auto _ : state)
        benchmark::DoNotOptimize(sample_curve_uniform(spec, 10000, ++seed));
}
BENCHMARK(BM_sample_curve)->Unit(benchmark::kMillisecond);

} // namespace

BENCHMARK_MAIN();
