#include "curvest/curve_estimator.hpp"

#include <cmath>

#include "curvest/bounds.hpp"
#include "curvest/geometry.hpp"

namespace curvest {

namespace {

CurveEstimate select_pair(const PointCloud& cloud, const Point& a, double epsilon1,
                          std::uint64_t m_required) {
    const auto neighbors = cloud.empty() ? std::vector<Neighbor>{}
                                         : radius_query(cloud, a, epsilon1);

    // Among bracketing pairs, minimize max(d(a,y1), d(a,y2)). Neighbors
    // arrive sorted by distance, so the first j admitting an opposite-side
    // partner i < j realizes the minimum; remaining ties on the same
    // distance are broken by the lowest cloud-index pair.
    bool found = false;
    double best_d = 0.0;
    std::size_t bi = 0, bj = 0;
    for (std::size_t j = 0; j < neighbors.size(); ++j) {
        if (found && neighbors[j].dist > best_d) break;
        for (std::size_t i = 0; i < j; ++i) {
            if (!opposite_side_test(a, neighbors[i].point, neighbors[j].point)) continue;
            std::size_t lo = neighbors[i].index, hi = neighbors[j].index;
            if (lo > hi) std::swap(lo, hi);
            if (!found || (found && neighbors[j].dist == best_d &&
                           (lo < std::min(bi, bj) ||
                            (lo == std::min(bi, bj) && hi < std::max(bi, bj))))) {
                found = true;
                best_d = neighbors[j].dist;
                bi = neighbors[i].index;
                bj = neighbors[j].index;
            }
        }
    }
    if (!found)
        throw NoBracketingPair("no opposite-side pair within epsilon of the query point");
    const double kappa = menger_curvature(cloud.point(bi), a, cloud.point(bj));
    return {kappa, bi, bj, epsilon1, m_required, cloud.size()};
}

} // namespace

CurveEstimate estimate_curve_curvature(const PointCloud& cloud, const Point& a,
                                       double epsilon, double p, double l) {
    if (cloud.dim() != 2) throw DimensionError("curve estimator expects a 2-D cloud");
    if (!(l > 0.0)) throw DomainError("curve length must be positive");
    if (!(epsilon > 0.0)) throw DomainError("epsilon must be positive");

    const double epsilon1 = std::min(l, epsilon);
    const BoundResult bound = curve_bound(l, epsilon1, p);
    if (!(static_cast<double>(cloud.size()) > bound.raw_value))
        throw InsufficientSamples(bound.m_min, cloud.size());
    return select_pair(cloud, a, epsilon1, bound.m_min);
}

CurveEstimate estimate_curve_curvature_unchecked(const PointCloud& cloud, const Point& a,
                                                 double epsilon) {
    if (cloud.dim() != 2) throw DimensionError("curve estimator expects a 2-D cloud");
    if (!(epsilon > 0.0)) throw DomainError("epsilon must be positive");
    return select_pair(cloud, a, epsilon, 0);
}

} // namespace curvest
