#pragma once

#include <array>
#include <cstdint>
#include <limits>
#include <utility>
#include <vector>

#include "curvest/geometry.hpp"
#include "curvest/point.hpp"

namespace curvest {

/// Candidate from a band search: cloud index plus the scanned value
/// (straightness deficit or co-planarity score).
struct BandCandidate {
    std::size_t index;
    double value;
};

/// Morton-ordered implicit octree (quadtree in 2-D) over a point cloud,
/// used for exact branch-and-bound band searches. Node boxes carry
/// monotone interval bounds of the scanned quantity, so pruning never
/// discards a band member.
///
/// Once built the structure is read-only and shareable across threads.
/// Every query is defined to return exactly what the corresponding
/// linear scan returns.
class SpatialGrid {
public:
    explicit SpatialGrid(const PointCloud& cloud);

    std::vector<Neighbor> radius_query(const PointCloud& cloud, const Point& a,
                                       double r, double tol_coincident) const;

    /// All admissible c with straightness deficit
    ///   d(y,a) + d(c,a) - d(y,c)
    /// within band_tol of the minimum over the cloud. Admissible means
    /// farther than tol_coincident from both a and y. Sorted by
    /// (deficit, index). Empty result means no admissible point exists.
    ///
    /// initial_best, when given, must be an upper bound on the minimum
    /// deficit over the admissible cloud (e.g. the deficit of any
    /// admissible point); it seeds the branch-and-bound and does not
    /// change the result.
    std::vector<BandCandidate> deficit_band(
        const PointCloud& cloud, const Point& a, const Point& y, double band_tol,
        double tol_coincident,
        double initial_best = std::numeric_limits<double>::infinity()) const;

    /// All admissible b with co-planarity score |<b-a, n>| / (|b-a| |n|)
    /// within band_tol of the maximum over the cloud; n must be a unit
    /// vector. Sorted by ascending index.
    std::vector<BandCandidate> score_band(const PointCloud& cloud, const Point& a,
                                          const std::array<double, 3>& n,
                                          double band_tol, double tol_coincident) const;

private:
    /// Tree node over a contiguous run of the Morton-ordered ids. The
    /// box is fitted to the points (outward-rounded to float), not to
    /// the Morton cell, so pruning bounds track the surface the cloud
    /// actually occupies.
    struct Node {
        float lo[3], hi[3];
        std::uint32_t begin, end;   // range in ids_
        std::uint32_t first_child;  // children are contiguous
        std::uint32_t nchild;       // 0 for leaves
    };

    int dim_;
    int max_level_;                    // tree depth: finest cells are side_/2^max_level_
    std::array<double, 3> lo_{};       // origin of the bounding cube
    double side_ = 1.0;                // cube side length
    std::vector<std::uint32_t> codes_; // sorted Morton codes (freed after build)
    std::vector<std::uint32_t> ids_;   // point ids in code order
    std::vector<Node> nodes_;          // Morton-order subdivision, fitted boxes
};

/// Linear-scan reference for deficit_band; used for small clouds and as
/// the independence check in tests.
std::vector<BandCandidate> deficit_band_linear(const PointCloud& cloud, const Point& a,
                                               const Point& y, double band_tol,
                                               double tol_coincident);

/// Linear-scan reference for score_band.
std::vector<BandCandidate> score_band_linear(const PointCloud& cloud, const Point& a,
                                             const std::array<double, 3>& n,
                                             double band_tol, double tol_coincident);

} // namespace curvest
