#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "curvest/point.hpp"
#include "curvest/spatial_grid.hpp"

namespace curvest {

struct SurfaceEstimate {
    double kappa1, kappa2;
    double gaussian; ///< kappa1 * kappa2, exactly as computed
    double mean;     ///< (kappa1 + kappa2) / 2, exactly as computed
    std::size_t q_index, q_prime_index; ///< witnesses of kappa1
    std::size_t b_index, b_prime_index; ///< witnesses of kappa2
    double epsilon_used, theta_used;
    std::uint64_t m_required, m_provided;
};

struct SurfaceOptions {
    /// Restrict the kappa2 score search to the epsilon-neighborhood
    /// instead of the whole cloud. Off by default; the full scan is the
    /// algorithm as stated.
    bool restrict_score_to_neighborhood = false;
};

/// Conjugate-set membership band on the straightness deficit.
inline double conjugate_tol(double epsilon) { return 1e-9 + 1e-6 * epsilon; }

/// Score-set membership band below the maximal co-planarity score.
inline constexpr double kScoreTol = 1e-9;

/// Witness chords qa, q'a are treated as collinear (DegenerateNormal
/// fallback) when the sine of their angle falls below this. Conjugate
/// witnesses are anti-aligned by construction, so their cross product is
/// dominated by curvature-order terms instead of the surface normal well
/// before it vanishes exactly.
inline constexpr double kDegenerateSine = 0.05;

/// All cloud points whose straightness deficit d(y,a)+d(c,a)-d(y,c) is
/// within conjugate_tol(d(y,a)) of the minimum; deficits returned for
/// diagnostics. Throws EmptyConjugateSet when no admissible point exists.
std::vector<BandCandidate> conjugate_set(const PointCloud& cloud, const Point& a,
                                         const Point& y,
                                         std::optional<double> band_tol = std::nullopt);

struct Principal1 {
    double kappa1;
    std::size_t q_index, q_prime_index;
};

/// First principal curvature: over every y within epsilon of a, the
/// smallest inverse circumradius realized by a conjugate of y. Ties
/// broken by lowest (y index, conjugate index).
Principal1 principal_curvature_1(const PointCloud& cloud, const Point& a, double epsilon);

struct Principal2 {
    double kappa2;
    std::size_t b_index, b_prime_index;
};

/// Second principal curvature: among points maximizing the co-planarity
/// score against q-a x q'-a, the smallest inverse circumradius realized
/// by one of their conjugates. When the witness chords are collinear the
/// normal falls back to the least-significant covariance axis of the
/// neighborhood of radius max(d(a,q), d(a,q')) (or epsilon when given).
Principal2 principal_curvature_2(const PointCloud& cloud, const Point& a, const Point& q,
                                 const Point& q_prime,
                                 std::optional<double> epsilon = std::nullopt,
                                 const SurfaceOptions& opts = {});

/// Full pipeline with the surface sample-size gate; theta defaults to
/// epsilon/10.
SurfaceEstimate estimate_surface_curvature(const PointCloud& cloud, const Point& a,
                                           double epsilon, double p, double s,
                                           std::optional<double> theta = std::nullopt,
                                           const SurfaceOptions& opts = {});

} // namespace curvest
