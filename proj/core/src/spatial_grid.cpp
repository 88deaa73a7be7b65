#include "curvest/spatial_grid.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace curvest {


namespace {

constexpr int kMaxLevel3D = 10; // 30-bit codes, 1024^3 finest cells
constexpr int kMaxLevel2D = 16; // 32-bit codes, 65536^2 finest cells
constexpr std::uint32_t kLeafSize = 64;

inline double sq(double v) { return v * v; }

inline double dist_point_box(const double* p, const float* lo, const float* hi, int dim) {
    double s = 0.0;
    for (int k = 0; k < dim; ++k) {
        if (p[k] < lo[k]) s += sq(lo[k] - p[k]);
        else if (p[k] > hi[k]) s += sq(p[k] - hi[k]);
    }
    return std::sqrt(s);
}

// spread the low 10 bits of v two zero bits apart
inline std::uint32_t spread3(std::uint32_t v) {
    v &= 0x3ff;
    v = (v | (v << 16)) & 0x30000ff;
    v = (v | (v << 8)) & 0x300f00f;
    v = (v | (v << 4)) & 0x30c30c3;
    v = (v | (v << 2)) & 0x9249249;
    return v;
}

// spread the low 16 bits of v one zero bit apart
inline std::uint32_t spread2(std::uint32_t v) {
    v &= 0xffff;
    v = (v | (v << 8)) & 0x00ff00ff;
    v = (v | (v << 4)) & 0x0f0f0f0f;
    v = (v | (v << 2)) & 0x33333333;
    v = (v | (v << 1)) & 0x55555555;
    return v;
}

} // namespace

SpatialGrid::SpatialGrid(const PointCloud& cloud)
    : dim_(cloud.dim()), max_level_(cloud.dim() == 3 ? kMaxLevel3D : kMaxLevel2D) {
    const std::size_t n = cloud.size();
    double hi[3] = {0, 0, 0};
    for (int k = 0; k < dim_; ++k) lo_[k] = hi[k] = cloud.coord(0)[k];
    for (std::size_t i = 1; i < n; ++i) {
        const double* p = cloud.coord(i);
        for (int k = 0; k < dim_; ++k) {
            lo_[k] = std::min(lo_[k], p[k]);
            hi[k] = std::max(hi[k], p[k]);
        }
    }
    side_ = 0.0;
    for (int k = 0; k < dim_; ++k) side_ = std::max(side_, hi[k] - lo_[k]);
    if (side_ <= 0.0) side_ = 1.0;

    const std::uint32_t res = 1u << max_level_;
    const double scale = static_cast<double>(res) / side_;
    const auto cell_of = [&](double v, int k) {
        const double c = (v - lo_[k]) * scale;
        return std::min(res - 1, static_cast<std::uint32_t>(std::max(0.0, c)));
    };

    // pack (code, id) and LSD radix sort by the code bits
    std::vector<std::uint64_t> pairs(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double* p = cloud.coord(i);
        std::uint32_t code;
        if (dim_ == 3)
            code = spread3(cell_of(p[0], 0)) << 2 | spread3(cell_of(p[1], 1)) << 1 |
                   spread3(cell_of(p[2], 2));
        else
            code = spread2(cell_of(p[0], 0)) << 1 | spread2(cell_of(p[1], 1));
        pairs[i] = (static_cast<std::uint64_t>(code) << 32) | i;
    }
    {
        const int code_bits = dim_ * max_level_;
        std::vector<std::uint64_t> tmp(n);
        std::uint64_t* src = pairs.data();
        std::uint64_t* dst = tmp.data();
        static thread_local std::uint32_t count[(1 << 15) + 1];
        for (int shift = 0; shift < code_bits; shift += 15) {
            const int bits = std::min(15, code_bits - shift);
            const std::uint32_t buckets = 1u << bits;
            std::fill(count, count + buckets + 1, 0u);
            for (std::size_t i = 0; i < n; ++i)
                ++count[((src[i] >> (32 + shift)) & (buckets - 1)) + 1];
            for (std::uint32_t b = 0; b < buckets; ++b) count[b + 1] += count[b];
            for (std::size_t i = 0; i < n; ++i)
                dst[count[(src[i] >> (32 + shift)) & (buckets - 1)]++] = src[i];
            std::swap(src, dst);
        }
        if (src != pairs.data()) std::copy(src, src + n, pairs.data());
    }
    codes_.resize(n);
    ids_.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        codes_[i] = static_cast<std::uint32_t>(pairs[i] >> 32);
        ids_[i] = static_cast<std::uint32_t>(pairs[i]);
    }
    pairs.clear();
    pairs.shrink_to_fit();

    // build-time float copy of the coordinates in Morton order, so leaf
    // boxes can be fitted from a contiguous stream; one flat gather with
    // prefetch hides the random-access latency
    double coord_bound = 1.0;
    for (int k = 0; k < dim_; ++k)
        coord_bound = std::max({coord_bound, std::abs(lo_[k]), std::abs(lo_[k] + side_)});
    std::vector<float> fc(n * static_cast<std::size_t>(dim_));
    if (dim_ == 3) {
        for (std::size_t i = 0; i < n; ++i) {
            if (i + 32 < n) __builtin_prefetch(cloud.coord(ids_[i + 32]));
            const double* p = cloud.coord(ids_[i]);
            fc[i * 3] = static_cast<float>(p[0]);
            fc[i * 3 + 1] = static_cast<float>(p[1]);
            fc[i * 3 + 2] = static_cast<float>(p[2]);
        }
    } else {
        for (std::size_t i = 0; i < n; ++i) {
            if (i + 32 < n) __builtin_prefetch(cloud.coord(ids_[i + 32]));
            const double* p = cloud.coord(ids_[i]);
            fc[i * 2] = static_cast<float>(p[0]);
            fc[i * 2 + 1] = static_cast<float>(p[1]);
        }
    }
    // covers the float representation error of the gathered coordinates
    const float box_pad =
        4.0f * std::numeric_limits<float>::epsilon() * static_cast<float>(coord_bound);

    // explicit node array in Morton order, with boxes fitted to the
    // points (not the cells): queries prune against what is actually
    // there, which matters when the cloud hugs a lower-dimensional
    // surface, and traversal needs no per-query binary searches
    const int children = 1 << dim_;
    nodes_.reserve(n / (kLeafSize / 4) + 16);
    const auto fill = [&](auto&& self, std::uint32_t idx, std::uint32_t b, std::uint32_t e,
                          int level) -> void {
        nodes_[idx].begin = b;
        nodes_[idx].end = e;
        if (e - b <= kLeafSize || level == max_level_) {
            float blo[3] = {0, 0, 0}, bhi[3] = {0, 0, 0};
            for (int k = 0; k < dim_; ++k) {
                blo[k] = std::numeric_limits<float>::infinity();
                bhi[k] = -std::numeric_limits<float>::infinity();
            }
            for (std::uint32_t j = b; j < e; ++j)
                for (int k = 0; k < dim_; ++k) {
                    const float v = fc[static_cast<std::size_t>(j) * dim_ + k];
                    blo[k] = std::min(blo[k], v);
                    bhi[k] = std::max(bhi[k], v);
                }
            Node& nd = nodes_[idx];
            nd.nchild = 0;
            nd.first_child = 0;
            for (int k = 0; k < 3; ++k) {
                nd.lo[k] = k < dim_ ? blo[k] - box_pad : 0.0f;
                nd.hi[k] = k < dim_ ? bhi[k] + box_pad : 0.0f;
            }
            return;
        }
        const int shift = dim_ * (max_level_ - level - 1);
        const std::uint32_t base = codes_[b] >> (shift + dim_) << (shift + dim_);
        std::uint32_t bounds[9];
        bounds[0] = b;
        for (int c = 1; c < children; ++c)
            bounds[c] = static_cast<std::uint32_t>(
                std::lower_bound(codes_.begin() + b, codes_.begin() + e,
                                 base | (static_cast<std::uint32_t>(c) << shift)) -
                codes_.begin());
        bounds[children] = e;
        std::uint32_t cb[8], ce[8];
        std::uint32_t nc = 0;
        for (int c = 0; c < children; ++c) {
            if (bounds[c] == bounds[c + 1]) continue;
            cb[nc] = bounds[c];
            ce[nc] = bounds[c + 1];
            ++nc;
        }
        const std::uint32_t first = static_cast<std::uint32_t>(nodes_.size());
        nodes_[idx].first_child = first;
        nodes_[idx].nchild = nc;
        nodes_.resize(nodes_.size() + nc);
        for (std::uint32_t c = 0; c < nc; ++c) self(self, first + c, cb[c], ce[c], level + 1);
        Node& nd = nodes_[idx];
        for (int k = 0; k < 3; ++k) {
            nd.lo[k] = nodes_[first].lo[k];
            nd.hi[k] = nodes_[first].hi[k];
        }
        for (std::uint32_t c = 1; c < nc; ++c)
            for (int k = 0; k < 3; ++k) {
                nd.lo[k] = std::min(nd.lo[k], nodes_[first + c].lo[k]);
                nd.hi[k] = std::max(nd.hi[k], nodes_[first + c].hi[k]);
            }
    };
    if (n > 0) {
        nodes_.resize(1);
        fill(fill, 0, 0, static_cast<std::uint32_t>(n), 0);
    }
    nodes_.shrink_to_fit();
    codes_.clear(); // only needed to build the subdivision
    codes_.shrink_to_fit();
}

std::vector<Neighbor> SpatialGrid::radius_query(const PointCloud& cloud, const Point& a,
                                                double r, double tol_coincident) const {
    double ac[3] = {0, 0, 0};
    for (int k = 0; k < dim_; ++k) ac[k] = a[k];
    std::vector<Neighbor> out;

    const auto scan = [&](std::uint32_t b, std::uint32_t e) {
        for (std::uint32_t j = b; j < e; ++j) {
            const std::uint32_t i = ids_[j];
            const double* p = cloud.coord(i);
            double s = 0.0;
            for (int k = 0; k < dim_; ++k) s += sq(p[k] - ac[k]);
            const double d = std::sqrt(s);
            if (d < r && d > tol_coincident) out.push_back({i, cloud.point(i), d});
        }
    };

    const auto descend = [&](auto&& self, std::uint32_t idx) -> void {
        const Node& nd = nodes_[idx];
        if (nd.nchild == 0) {
            scan(nd.begin, nd.end);
            return;
        }
        for (std::uint32_t c = 0; c < nd.nchild; ++c) {
            const Node& kid = nodes_[nd.first_child + c];
            if (dist_point_box(ac, kid.lo, kid.hi, dim_) > r) continue;
            self(self, nd.first_child + c);
        }
    };
    if (!nodes_.empty()) descend(descend, 0);

    std::sort(out.begin(), out.end(), [](const Neighbor& x, const Neighbor& y) {
        return x.dist != y.dist ? x.dist < y.dist : x.index < y.index;
    });
    return out;
}

std::vector<BandCandidate> deficit_band_linear(const PointCloud& cloud, const Point& a,
                                               const Point& y, double band_tol,
                                               double tol_coincident) {
    const int dim = cloud.dim();
    double ac[3], yc[3];
    for (int k = 0; k < dim; ++k) {
        ac[k] = a[k];
        yc[k] = y[k];
    }
    const double dya = distance(y, a);
    std::vector<BandCandidate> out;
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < cloud.size(); ++i) {
        const double* c = cloud.coord(i);
        double dca = 0.0, dcy = 0.0;
        for (int k = 0; k < dim; ++k) {
            dca += sq(c[k] - ac[k]);
            dcy += sq(c[k] - yc[k]);
        }
        dca = std::sqrt(dca);
        dcy = std::sqrt(dcy);
        if (dca <= tol_coincident || dcy <= tol_coincident) continue;
        const double def = dya + dca - dcy;
        if (def <= best + band_tol) {
            best = std::min(best, def);
            out.push_back({i, def});
        }
    }
    std::erase_if(out, [&](const BandCandidate& c) { return c.value > best + band_tol; });
    std::sort(out.begin(), out.end(), [](const BandCandidate& x, const BandCandidate& y2) {
        return x.value != y2.value ? x.value < y2.value : x.index < y2.index;
    });
    return out;
}

std::vector<BandCandidate> SpatialGrid::deficit_band(const PointCloud& cloud, const Point& a,
                                                     const Point& y, double band_tol,
                                                     double tol_coincident,
                                                     double initial_best) const {
    double ac[3] = {0, 0, 0}, yc[3] = {0, 0, 0}, uh[3] = {0, 0, 0};
    for (int k = 0; k < dim_; ++k) {
        ac[k] = a[k];
        yc[k] = y[k];
    }
    const double dya = distance(y, a);
    for (int k = 0; k < dim_; ++k) uh[k] = (yc[k] - ac[k]) / dya;
    const double slack = 1e-12 * (1.0 + dya + side_);

    double best = initial_best;
    std::vector<BandCandidate> cand;

    // The deficit f(c) = d(y,a) + |c-a| - |c-y| is increasing in |c-a|
    // and decreasing in the angle gamma between c-a and y-a, so
    // F(A0, gamma1) with A0 = dist(a, box) and gamma1 the largest angle
    // reachable inside the box's bounding sphere is a true lower bound.
    const auto box_lb = [&](const float* blo, const float* bhi) {
        const double a0 = dist_point_box(ac, blo, bhi, dim_);
        double rad2 = 0.0, d2 = 0.0, dot = 0.0;
        for (int k = 0; k < dim_; ++k) {
            rad2 += sq(0.5 * (static_cast<double>(bhi[k]) - blo[k]));
            const double m = 0.5 * (static_cast<double>(blo[k]) + bhi[k]) - ac[k];
            d2 += m * m;
            dot += m * uh[k];
        }
        const double rad = std::sqrt(rad2);
        const double dc = std::sqrt(d2);
        double cg; // cos(gamma1)
        if (dc <= rad) {
            cg = -1.0;
        } else {
            const double cphi = std::clamp(dot / dc, -1.0, 1.0);
            const double sphi = std::sqrt(std::max(0.0, 1.0 - cphi * cphi));
            const double spsi = std::min(1.0, rad / dc);
            const double cpsi = std::sqrt(std::max(0.0, 1.0 - spsi * spsi));
            // gamma1 = min(pi, phi + psi); phi + psi exceeds pi iff
            // cos(phi) < -cos(psi) (psi <= pi/2)
            cg = cphi < -cpsi ? -1.0 : cphi * cpsi - sphi * spsi;
        }
        return dya + a0 - std::sqrt(std::max(0.0, a0 * a0 + dya * dya - 2.0 * a0 * dya * cg)) -
               slack;
    };

    const auto scan = [&](std::uint32_t b, std::uint32_t e) {
        for (std::uint32_t j = b; j < e; ++j) {
            if (j + 8 < e) __builtin_prefetch(cloud.coord(ids_[j + 8]));
            const std::uint32_t i = ids_[j];
            const double* c = cloud.coord(i);
            double dca = 0.0, dcy = 0.0;
            for (int k = 0; k < dim_; ++k) {
                dca += sq(c[k] - ac[k]);
                dcy += sq(c[k] - yc[k]);
            }
            dca = std::sqrt(dca);
            dcy = std::sqrt(dcy);
            if (dca <= tol_coincident || dcy <= tol_coincident) continue;
            const double def = dya + dca - dcy;
            if (def <= best + band_tol) {
                best = std::min(best, def);
                cand.push_back({i, def});
            }
        }
    };

    struct Entry {
        double lb;
        std::uint32_t idx;
    };
    const auto descend = [&](auto&& self, std::uint32_t idx) -> void {
        const Node& nd = nodes_[idx];
        if (nd.nchild == 0) {
            scan(nd.begin, nd.end);
            return;
        }
        Entry kids[8];
        int nc = 0;
        for (std::uint32_t c = 0; c < nd.nchild; ++c) {
            const Node& kid = nodes_[nd.first_child + c];
            const double lb = box_lb(kid.lo, kid.hi);
            if (lb <= best + band_tol) kids[nc++] = {lb, nd.first_child + c};
        }
        std::sort(kids, kids + nc, [](const Entry& u, const Entry& v) { return u.lb < v.lb; });
        for (int c = 0; c < nc; ++c) {
            if (kids[c].lb > best + band_tol) continue; // best may have improved
            self(self, kids[c].idx);
        }
    };
    if (!nodes_.empty()) descend(descend, 0);

    std::erase_if(cand, [&](const BandCandidate& c) { return c.value > best + band_tol; });
    std::sort(cand.begin(), cand.end(), [](const BandCandidate& x, const BandCandidate& y2) {
        return x.value != y2.value ? x.value < y2.value : x.index < y2.index;
    });
    return cand;
}

std::vector<BandCandidate> score_band_linear(const PointCloud& cloud, const Point& a,
                                             const std::array<double, 3>& nrm,
                                             double band_tol, double tol_coincident) {
    double ac[3] = {a[0], a[1], a[2]};
    std::vector<BandCandidate> out;
    double best = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < cloud.size(); ++i) {
        const double* b = cloud.coord(i);
        double dot = 0.0, nb = 0.0;
        for (int k = 0; k < 3; ++k) {
            const double u = b[k] - ac[k];
            dot += u * nrm[k];
            nb += u * u;
        }
        nb = std::sqrt(nb);
        if (nb <= tol_coincident) continue;
        const double score = std::abs(dot) / nb;
        if (score >= best - band_tol) {
            best = std::max(best, score);
            out.push_back({i, score});
        }
    }
    std::erase_if(out, [&](const BandCandidate& c) { return c.value < best - band_tol; });
    std::sort(out.begin(), out.end(),
              [](const BandCandidate& x, const BandCandidate& y2) { return x.index < y2.index; });
    return out;
}

std::vector<BandCandidate> SpatialGrid::score_band(const PointCloud& cloud, const Point& a,
                                                   const std::array<double, 3>& nrm,
                                                   double band_tol,
                                                   double tol_coincident) const {
    double ac[3] = {a[0], a[1], a[2]};
    double best = -std::numeric_limits<double>::infinity();
    std::vector<BandCandidate> cand;

    // upper bound of the score over a box: widen the direction cone
    // subtended by the box's bounding sphere
    const auto box_ub = [&](const float* blo, const float* bhi) {
        double rad2 = 0.0, d2 = 0.0, dot = 0.0;
        for (int k = 0; k < 3; ++k) {
            rad2 += sq(0.5 * (static_cast<double>(bhi[k]) - blo[k]));
            const double m = 0.5 * (static_cast<double>(blo[k]) + bhi[k]) - ac[k];
            d2 += m * m;
            dot += m * nrm[k];
        }
        const double rad = std::sqrt(rad2);
        const double d = std::sqrt(d2);
        if (d <= rad + tol_coincident) return 1.0;
        const double psi = std::asin(std::min(1.0, rad / d));
        const double phi = std::acos(std::clamp(std::abs(dot) / d, 0.0, 1.0));
        return std::cos(std::max(0.0, phi - psi)) + 1e-12;
    };

    const auto scan = [&](std::uint32_t b, std::uint32_t e) {
        for (std::uint32_t j = b; j < e; ++j) {
            const std::uint32_t i = ids_[j];
            const double* p = cloud.coord(i);
            double dot = 0.0, nb = 0.0;
            for (int k = 0; k < 3; ++k) {
                const double u = p[k] - ac[k];
                dot += u * nrm[k];
                nb += u * u;
            }
            nb = std::sqrt(nb);
            if (nb <= tol_coincident) continue;
            const double score = std::abs(dot) / nb;
            if (score >= best - band_tol) {
                best = std::max(best, score);
                cand.push_back({i, score});
            }
        }
    };

    struct Entry {
        double ub;
        std::uint32_t idx;
    };
    const auto descend = [&](auto&& self, std::uint32_t idx) -> void {
        const Node& nd = nodes_[idx];
        if (nd.nchild == 0) {
            scan(nd.begin, nd.end);
            return;
        }
        Entry kids[8];
        int nc = 0;
        for (std::uint32_t c = 0; c < nd.nchild; ++c) {
            const Node& kid = nodes_[nd.first_child + c];
            const double ub = box_ub(kid.lo, kid.hi);
            if (ub >= best - band_tol) kids[nc++] = {ub, nd.first_child + c};
        }
        std::sort(kids, kids + nc, [](const Entry& u, const Entry& v) { return u.ub > v.ub; });
        for (int c = 0; c < nc; ++c) {
            if (kids[c].ub < best - band_tol) continue;
            self(self, kids[c].idx);
        }
    };
    if (!nodes_.empty()) descend(descend, 0);

    std::erase_if(cand, [&](const BandCandidate& c) { return c.value < best - band_tol; });
    std::sort(cand.begin(), cand.end(),
              [](const BandCandidate& x, const BandCandidate& y2) { return x.index < y2.index; });
    return cand;
}

} // namespace curvest
