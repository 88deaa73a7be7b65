#include "curvest/surface_estimator.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "curvest/bounds.hpp"
#include "curvest/geometry.hpp"

namespace curvest {

namespace {

std::array<double, 3> chord(const Point& from, const Point& to) {
    return {to[0] - from[0], to[1] - from[1], to[2] - from[2]};
}

std::array<double, 3> cross(const std::array<double, 3>& u, const std::array<double, 3>& v) {
    return {u[1] * v[2] - u[2] * v[1], u[2] * v[0] - u[0] * v[2], u[0] * v[1] - u[1] * v[0]};
}

double norm(const std::array<double, 3>& v) {
    return std::sqrt(v[0] * v[0] + v[1] * v[1] + v[2] * v[2]);
}

/// Smallest-eigenvalue eigenvector of a symmetric 3x3 matrix, by cyclic
/// Jacobi rotations.
std::array<double, 3> min_eigenvector(double m[3][3]) {
    double v[3][3] = {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}};
    for (int sweep = 0; sweep < 32; ++sweep) {
        double off = std::abs(m[0][1]) + std::abs(m[0][2]) + std::abs(m[1][2]);
        if (off == 0.0) break;
        for (int p = 0; p < 2; ++p)
            for (int q = p + 1; q < 3; ++q) {
                if (m[p][q] == 0.0) continue;
                const double theta = (m[q][q] - m[p][p]) / (2.0 * m[p][q]);
                const double t = (theta >= 0 ? 1.0 : -1.0) /
                                 (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0), s = t * c;
                for (int k = 0; k < 3; ++k) {
                    const double mkp = m[k][p], mkq = m[k][q];
                    m[k][p] = c * mkp - s * mkq;
                    m[k][q] = s * mkp + c * mkq;
                }
                for (int k = 0; k < 3; ++k) {
                    const double mpk = m[p][k], mqk = m[q][k];
                    m[p][k] = c * mpk - s * mqk;
                    m[q][k] = s * mpk + c * mqk;
                }
                for (int k = 0; k < 3; ++k) {
                    const double vkp = v[k][p], vkq = v[k][q];
                    v[k][p] = c * vkp - s * vkq;
                    v[k][q] = s * vkp + c * vkq;
                }
            }
    }
    int imin = 0;
    for (int i = 1; i < 3; ++i)
        if (m[i][i] < m[imin][imin]) imin = i;
    return {v[0][imin], v[1][imin], v[2][imin]};
}

std::vector<BandCandidate> conjugates(const PointCloud& cloud, const Point& a, const Point& y,
                                      double band,
                                      double warm = std::numeric_limits<double>::infinity()) {
    const double tol = cloud.coincident_tol();
    if (const SpatialGrid* g = cloud.grid()) return g->deficit_band(cloud, a, y, band, tol, warm);
    return deficit_band_linear(cloud, a, y, band, tol);
}

} // namespace

std::vector<BandCandidate> conjugate_set(const PointCloud& cloud, const Point& a,
                                         const Point& y, std::optional<double> band_tol) {
    if (cloud.dim() != 3) throw DimensionError("conjugate_set expects a 3-D cloud");
    const double dya = distance(y, a);
    if (dya <= cloud.coincident_tol())
        throw DegeneratePair("conjugate_set: y coincides with a");
    const double band = band_tol.value_or(conjugate_tol(dya));
    auto out = conjugates(cloud, a, y, band);
    if (out.empty())
        throw EmptyConjugateSet("no admissible conjugate candidate in the cloud");
    return out;
}

Principal1 principal_curvature_1(const PointCloud& cloud, const Point& a, double epsilon) {
    if (cloud.dim() != 3) throw DimensionError("surface estimator expects a 3-D cloud");
    if (!(epsilon > 0.0)) throw DomainError("epsilon must be positive");
    const auto neighborhood = radius_query(cloud, a, epsilon);
    if (neighborhood.empty())
        throw EmptyNeighborhood("no cloud points within epsilon of the query point");

    const double band = conjugate_tol(epsilon);
    const double tol = cloud.coincident_tol();
    // seed each branch-and-bound with the best deficit among the nearest
    // neighbors of a (conjugates concentrate there); this is only an
    // upper bound on the minimum and cannot change the band
    const std::size_t n_warm = std::min<std::size_t>(neighborhood.size(), 64);
    bool found = false;
    double best = 0.0;
    std::size_t best_y = 0, best_c = 0;
    for (const Neighbor& y : neighborhood) {
        double warm = std::numeric_limits<double>::infinity();
        for (std::size_t k = 0; k < n_warm; ++k) {
            const Neighbor& c = neighborhood[k];
            const double dcy = distance(c.point, y.point);
            if (c.dist <= tol || dcy <= tol) continue;
            warm = std::min(warm, y.dist + c.dist - dcy);
        }
        for (const BandCandidate& c : conjugates(cloud, a, y.point, band, warm)) {
            const double k = menger_curvature(y.point, a, cloud.point(c.index));
            if (!found || k < best ||
                (k == best && (y.index < best_y || (y.index == best_y && c.index < best_c)))) {
                found = true;
                best = k;
                best_y = y.index;
                best_c = c.index;
            }
        }
    }
    if (!found) throw EmptyConjugateSet("every neighbor has an empty conjugate set");
    return {best, best_y, best_c};
}

Principal2 principal_curvature_2(const PointCloud& cloud, const Point& a, const Point& q,
                                 const Point& q_prime, std::optional<double> epsilon,
                                 const SurfaceOptions& opts) {
    if (cloud.dim() != 3) throw DimensionError("surface estimator expects a 3-D cloud");
    const auto u = chord(a, q), v = chord(a, q_prime);
    const double scale = epsilon.value_or(std::max(distance(a, q), distance(a, q_prime)));

    std::array<double, 3> normal = cross(u, v);
    double nn = norm(normal);
    if (nn <= kDegenerateSine * norm(u) * norm(v)) {
        // near-collinear witness chords: recover the normal from the
        // local covariance instead
        const auto nbrs = radius_query(cloud, a, scale);
        if (nbrs.size() < 3)
            throw DegenerateNormal("witness chords are collinear and the neighborhood is too "
                                   "small for a covariance normal");
        double mean[3] = {0, 0, 0};
        for (const Neighbor& nb : nbrs)
            for (int k = 0; k < 3; ++k) mean[k] += nb.point[k];
        for (double& mk : mean) mk /= static_cast<double>(nbrs.size());
        double cov[3][3] = {};
        for (const Neighbor& nb : nbrs)
            for (int r = 0; r < 3; ++r)
                for (int c = 0; c < 3; ++c)
                    cov[r][c] += (nb.point[r] - mean[r]) * (nb.point[c] - mean[c]);
        normal = min_eigenvector(cov);
        nn = norm(normal);
        if (nn == 0.0) throw DegenerateNormal("covariance normal vanished");
    }
    for (double& c : normal) c /= nn;

    const double tol = cloud.coincident_tol();
    std::vector<BandCandidate> scored;
    if (opts.restrict_score_to_neighborhood) {
        const auto nbrs = radius_query(cloud, a, scale);
        PointCloud local(3);
        // score over the neighborhood only; map indices back afterwards
        std::vector<std::size_t> back;
        back.reserve(nbrs.size());
        for (const Neighbor& nb : nbrs) {
            local.push_back(nb.point);
            back.push_back(nb.index);
        }
        scored = score_band_linear(local, a, normal, kScoreTol, tol);
        for (BandCandidate& c : scored) c.index = back[c.index];
        std::sort(scored.begin(), scored.end(),
                  [](const BandCandidate& x, const BandCandidate& y) { return x.index < y.index; });
    } else if (const SpatialGrid* g = cloud.grid()) {
        scored = g->score_band(cloud, a, normal, kScoreTol, tol);
    } else {
        scored = score_band_linear(cloud, a, normal, kScoreTol, tol);
    }
    if (scored.empty())
        throw EmptyScoreSet("no admissible point to score against the normal direction");

    const double band = conjugate_tol(scale);
    bool found = false;
    double best = 0.0;
    std::size_t best_b = 0, best_bp = 0;
    for (const BandCandidate& b : scored) {
        const Point bp = cloud.point(b.index);
        for (const BandCandidate& c : conjugates(cloud, a, bp, band)) {
            const double k = menger_curvature(bp, a, cloud.point(c.index));
            if (!found || k < best ||
                (k == best && (b.index < best_b || (b.index == best_b && c.index < best_bp)))) {
                found = true;
                best = k;
                best_b = b.index;
                best_bp = c.index;
            }
        }
    }
    if (!found) throw EmptyConjugateSet("every scored point has an empty conjugate set");
    return {best, best_b, best_bp};
}

SurfaceEstimate estimate_surface_curvature(const PointCloud& cloud, const Point& a,
                                           double epsilon, double p, double s,
                                           std::optional<double> theta,
                                           const SurfaceOptions& opts) {
    if (cloud.dim() != 3) throw DimensionError("surface estimator expects a 3-D cloud");
    if (!(s > 0.0)) throw DomainError("surface area must be positive");
    const double th = theta.value_or(epsilon / 10.0);
    const BoundResult bound = surface_bound(s, epsilon, th, p);
    if (!(static_cast<double>(cloud.size()) > bound.raw_value))
        throw InsufficientSamples(bound.m_min, cloud.size());

    const Principal1 p1 = principal_curvature_1(cloud, a, epsilon);
    const Principal2 p2 = principal_curvature_2(cloud, a, cloud.point(p1.q_index),
                                                cloud.point(p1.q_prime_index), epsilon, opts);
    SurfaceEstimate out;
    out.kappa1 = p1.kappa1;
    out.kappa2 = p2.kappa2;
    out.gaussian = p1.kappa1 * p2.kappa2;
    out.mean = (p1.kappa1 + p2.kappa2) / 2.0;
    out.q_index = p1.q_index;
    out.q_prime_index = p1.q_prime_index;
    out.b_index = p2.b_index;
    out.b_prime_index = p2.b_prime_index;
    out.epsilon_used = epsilon;
    out.theta_used = th;
    out.m_required = bound.m_min;
    out.m_provided = cloud.size();
    return out;
}

} // namespace curvest
