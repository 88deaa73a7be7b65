#include "curvest/geometry.hpp"

#include <algorithm>
#include <cmath>

#include "curvest/spatial_grid.hpp"

namespace curvest {

TriangleSides triangle_sides(const Point& a, const Point& b, const Point& c) {
    return {distance(a, b), distance(b, c), distance(c, a)};
}

namespace {

// Heron radicand D(D-d1)(D-d2)(D-d3) in Kahan's cancellation-stable
// product form; requires s1 >= s2 >= s3.
double heron_radicand_sorted(double s1, double s2, double s3) {
    const double t = (s1 + (s2 + s3)) * (s3 - (s1 - s2)) * (s3 + (s1 - s2)) * (s1 + (s2 - s3));
    return t / 16.0;
}

} // namespace

double circumradius(const Point& a, const Point& b, const Point& c) {
    const TriangleSides s = triangle_sides(a, b, c);
    if (s.d1 <= kTolDistinct || s.d2 <= kTolDistinct || s.d3 <= kTolDistinct)
        throw DegenerateTriple("circumradius: coincident points in triple");

    double s1 = s.d1, s2 = s.d2, s3 = s.d3;
    if (s1 < s2) std::swap(s1, s2);
    if (s2 < s3) std::swap(s2, s3);
    if (s1 < s2) std::swap(s1, s2);

    const double prod = s.d1 * s.d2 * s.d3;
    const double tol_heron = 1e-14 * std::pow(prod, 4.0 / 3.0);
    const double radicand = heron_radicand_sorted(s1, s2, s3);
    if (radicand <= tol_heron)
        return std::numeric_limits<double>::infinity(); // collinear triple
    return prod / (4.0 * std::sqrt(radicand));
}

double menger_curvature(const Point& a, const Point& b, const Point& c) {
    const double r = circumradius(a, b, c);
    return std::isinf(r) ? 0.0 : 1.0 / r;
}

bool opposite_side_test(const Point& a, const Point& y1, const Point& y2) {
    if (a.dim() != y1.dim() || a.dim() != y2.dim())
        throw DimensionError("opposite_side_test: mixed ambient dimensions");
    double dot = 0.0, n1 = 0.0, n2 = 0.0;
    for (int i = 0; i < a.dim(); ++i) {
        const double u = y1[i] - a[i];
        const double v = y2[i] - a[i];
        dot += u * v;
        n1 += u * u;
        n2 += v * v;
    }
    if (n1 == 0.0 || n2 == 0.0)
        throw DegeneratePair("opposite_side_test: chord endpoint equals the apex");
    return dot < 0.0;
}

std::vector<Neighbor> radius_query(const PointCloud& cloud, const Point& a, double r) {
    if (r <= 0.0) throw DomainError("radius_query: r must be positive");
    if (a.dim() != cloud.dim())
        throw DimensionError("radius_query: query dimension differs from cloud");

    const double tol = cloud.coincident_tol();
    if (const SpatialGrid* g = cloud.grid())
        return g->radius_query(cloud, a, r, tol);

    std::vector<Neighbor> out;
    for (std::size_t i = 0; i < cloud.size(); ++i) {
        const Point p = cloud.point(i);
        const double d = distance(a, p);
        if (d < r && d > tol) out.push_back({i, p, d});
    }
    std::sort(out.begin(), out.end(), [](const Neighbor& x, const Neighbor& y) {
        return x.dist != y.dist ? x.dist < y.dist : x.index < y.index;
    });
    return out;
}

double PointCloud::bbox_diag() const {
    if (bbox_for_ == xs_.size()) return bbox_diag_;
    if (xs_.empty()) {
        bbox_diag_ = 0.0;
    } else {
        double lo[3], hi[3];
        for (int k = 0; k < dim_; ++k) lo[k] = hi[k] = xs_[static_cast<std::size_t>(k)];
        const std::size_t n = size();
        for (std::size_t i = 1; i < n; ++i) {
            const double* p = coord(i);
            for (int k = 0; k < dim_; ++k) {
                lo[k] = std::min(lo[k], p[k]);
                hi[k] = std::max(hi[k], p[k]);
            }
        }
        double s = 0.0;
        for (int k = 0; k < dim_; ++k) s += (hi[k] - lo[k]) * (hi[k] - lo[k]);
        bbox_diag_ = std::sqrt(s);
    }
    bbox_for_ = xs_.size();
    return bbox_diag_;
}

const SpatialGrid* PointCloud::grid() const {
    if (size() <= kLinearScanThreshold) return nullptr;
    if (grid_for_ != xs_.size()) {
        grid_ = std::make_shared<SpatialGrid>(*this);
        grid_for_ = xs_.size();
    }
    return grid_.get();
}

} // namespace curvest
