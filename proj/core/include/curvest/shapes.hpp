#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "curvest/point.hpp"

namespace curvest {

/// Synthetic plane curve with closed-form derivatives.
struct CurveSpec {
    struct Circle {
        Point center;
        double radius;
    };
    struct Graph {
        std::function<double(double)> f, df, ddf;
        double x0, x1;
    };

    std::string name;
    std::string description;
    std::variant<Circle, Graph> kind;
    std::optional<Point> table_probe; ///< reference probe point, when the shape has one
    /// Marks shapes whose published reference value is known to be wrong.
    bool paper_discrepancy = false;
};

/// Synthetic surface z = f(x,y) over a rectangle, or a sphere.
struct SurfaceSpec {
    struct Sphere {
        Point center;
        double radius;
    };
    struct Graph {
        std::function<double(double, double)> f, fx, fy, fxx, fxy, fyy;
        double x0, x1, y0, y1;
    };

    struct Curvatures {
        double gaussian;
        double mean;
    };

    std::string name;
    std::string description;
    std::variant<Sphere, Graph> kind;
    std::optional<Point> table_probe;
    /// Replaces the graph curvature formulas where they are not the
    /// right ground truth (e.g. the cone, which is flat off-apex and
    /// non-smooth at the apex).
    std::function<Curvatures(const Point&)> oracle_override;
    /// Marks shapes whose published reference value is known to be wrong.
    bool paper_discrepancy = false;
    /// Closed-form area, for graphs whose weight integrand has points
    /// where the derivative formulas are undefined (the cone apex).
    std::optional<double> closed_area;
};

/// Arc length by closed form (circle) or adaptive quadrature, relative
/// error <= 1e-8.
double curve_length(const CurveSpec& spec);

/// Area by closed form (sphere) or 2-D adaptive quadrature, relative
/// error <= 1e-6.
double surface_area(const SurfaceSpec& spec);

/// m i.i.d. points uniform with respect to arc length; deterministic in seed.
PointCloud sample_curve_uniform(const CurveSpec& spec, std::uint64_t m, std::uint64_t seed);

/// m i.i.d. points uniform with respect to area; deterministic in seed.
PointCloud sample_surface_uniform(const SurfaceSpec& spec, std::uint64_t m, std::uint64_t seed);

/// Closed-form curvature at a point of the curve; the point must lie on
/// the shape within the on-shape tolerance.
double curve_curvature_oracle(const CurveSpec& spec, const Point& a);

/// Closed-form Gaussian and mean curvature at a point of the surface.
SurfaceSpec::Curvatures surface_curvature_oracle(const SurfaceSpec& spec, const Point& a);

/// Point on the curve at a given arc length from its start (circle: from
/// angle 0; graph: from x0). Used for probe grids.
Point curve_point_at_arclength(const CurveSpec& spec, double s);

/// Fixed shape catalog addressable by name.
const std::vector<CurveSpec>& curve_catalog();
const std::vector<SurfaceSpec>& surface_catalog();
const CurveSpec& find_curve(const std::string& name);
const SurfaceSpec& find_surface(const std::string& name);

} // namespace curvest
