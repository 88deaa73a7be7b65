#pragma once

#include <cstdint>

#include "curvest/point.hpp"

namespace curvest {

struct CurveEstimate {
    double kappa;
    std::size_t witness1, witness2; ///< cloud indices of the bracketing pair
    double epsilon_used;            ///< epsilon_1 = min(l, epsilon)
    std::uint64_t m_required;       ///< 0 for the unchecked variant
    std::uint64_t m_provided;
};

/// Epsilon-triangle curvature estimate at a query point on a plane curve
/// of known length l, gated by the curve sample-size bound. The query
/// point is trusted to lie on the curve and need not be a cloud member.
///
/// Throws InsufficientSamples when the cloud is smaller than the bound
/// demands, NoBracketingPair when no opposite-side pair exists within
/// epsilon_1.
CurveEstimate estimate_curve_curvature(const PointCloud& cloud, const Point& a,
                                       double epsilon, double p, double l);

/// Same selection logic without the sample-size gate, for clouds of
/// unknown length.
CurveEstimate estimate_curve_curvature_unchecked(const PointCloud& cloud, const Point& a,
                                                 double epsilon);

} // namespace curvest
