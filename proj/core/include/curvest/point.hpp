#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "curvest/errors.hpp"

namespace curvest {

class SpatialGrid;

/// A location in ambient 2- or 3-space.
class Point {
public:
    Point(double x, double y) : c_{x, y, 0.0}, dim_(2) { check(); }
    Point(double x, double y, double z) : c_{x, y, z}, dim_(3) { check(); }

    static Point from(const std::vector<double>& coords) {
        if (coords.size() == 2) return {coords[0], coords[1]};
        if (coords.size() == 3) return {coords[0], coords[1], coords[2]};
        throw DimensionError("point dimension must be 2 or 3, got " +
                             std::to_string(coords.size()));
    }

    int dim() const { return dim_; }
    double operator[](int i) const { return c_[i]; }
    double x() const { return c_[0]; }
    double y() const { return c_[1]; }
    double z() const { return c_[2]; }

    bool operator==(const Point& o) const {
        return dim_ == o.dim_ && c_[0] == o.c_[0] && c_[1] == o.c_[1] && c_[2] == o.c_[2];
    }

private:
    void check() const {
        for (int i = 0; i < dim_; ++i)
            if (!std::isfinite(c_[i]))
                throw DomainError("point coordinates must be finite");
    }

    std::array<double, 3> c_;
    int dim_;
};

inline double distance(const Point& a, const Point& b) {
    if (a.dim() != b.dim())
        throw DimensionError("distance: mixed ambient dimensions");
    double s = 0.0;
    for (int i = 0; i < a.dim(); ++i) {
        const double d = a[i] - b[i];
        s += d * d;
    }
    return std::sqrt(s);
}

struct CloudMeta {
    std::uint64_t seed = 0;
    std::string generator;
};

/// Finite indexed set of same-dimension points. Indices are stable so
/// estimates can report witness points by index.
class PointCloud {
public:
    explicit PointCloud(int dim) : dim_(dim) {
        if (dim != 2 && dim != 3)
            throw DimensionError("cloud dimension must be 2 or 3");
    }

    PointCloud(int dim, std::vector<double> flat_coords,
               std::optional<CloudMeta> meta = std::nullopt)
        : dim_(dim), xs_(std::move(flat_coords)), meta_(std::move(meta)) {
        if (dim != 2 && dim != 3)
            throw DimensionError("cloud dimension must be 2 or 3");
        if (xs_.size() % static_cast<std::size_t>(dim) != 0)
            throw DimensionError("flat coordinate array length not a multiple of dim");
        for (double v : xs_)
            if (!std::isfinite(v)) throw DomainError("cloud coordinates must be finite");
    }

    int dim() const { return dim_; }
    std::size_t size() const { return xs_.size() / static_cast<std::size_t>(dim_); }
    bool empty() const { return xs_.empty(); }

    Point point(std::size_t i) const {
        const double* p = xs_.data() + i * static_cast<std::size_t>(dim_);
        return dim_ == 2 ? Point(p[0], p[1]) : Point(p[0], p[1], p[2]);
    }

    /// Raw coordinate access, dim-strided.
    const double* coord(std::size_t i) const {
        return xs_.data() + i * static_cast<std::size_t>(dim_);
    }
    const std::vector<double>& flat() const { return xs_; }

    void push_back(const Point& p) {
        if (p.dim() != dim_) throw DimensionError("push_back: wrong point dimension");
        for (int i = 0; i < dim_; ++i) xs_.push_back(p[i]);
    }

    void reserve(std::size_t n) { xs_.reserve(n * static_cast<std::size_t>(dim_)); }

    const std::optional<CloudMeta>& meta() const { return meta_; }
    void set_meta(CloudMeta m) { meta_ = std::move(m); }

    /// Diagonal of the axis-aligned bounding box; 0 for single-point clouds.
    double bbox_diag() const;

    /// Two points are treated as coincident below this distance.
    double coincident_tol() const { return 1e-12 * std::max(1e-30, bbox_diag()); }

    /// Shared read-only spatial index; built on first use for clouds
    /// larger than the linear-scan threshold, otherwise null.
    const SpatialGrid* grid() const;

    static constexpr std::size_t kLinearScanThreshold = 512;

private:
    int dim_;
    std::vector<double> xs_;
    std::optional<CloudMeta> meta_;

    // lazy caches, stamped with the coordinate count they were built for
    static constexpr std::size_t kNoCache = static_cast<std::size_t>(-1);
    mutable std::shared_ptr<const SpatialGrid> grid_;
    mutable std::size_t grid_for_ = kNoCache;
    mutable double bbox_diag_ = 0.0;
    mutable std::size_t bbox_for_ = kNoCache;
};

} // namespace curvest
