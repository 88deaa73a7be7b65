#pragma once

#include <limits>
#include <vector>

#include "curvest/point.hpp"

namespace curvest {

/// Side lengths of a point triple together with the semiperimeter.
struct TriangleSides {
    double d1, d2, d3; // |ab|, |bc|, |ca|
    double semiperimeter() const { return (d1 + d2 + d3) / 2.0; }
};

TriangleSides triangle_sides(const Point& a, const Point& b, const Point& c);

/// Points closer than this are treated as coincident by the triple primitives.
inline constexpr double kTolDistinct = 1e-12;

/// Radius of the circle through a, b, c. Returns +infinity when the
/// Heron radicand clamps to zero (collinear triple). Throws
/// DegenerateTriple on coincident inputs.
double circumradius(const Point& a, const Point& b, const Point& c);

/// Inverse circumradius; 0 for collinear triples.
double menger_curvature(const Point& a, const Point& b, const Point& c);

/// True iff the chords from a to y1 and to y2 make an obtuse angle,
/// i.e. (y1-a).(y2-a) < 0. A zero dot product is false.
bool opposite_side_test(const Point& a, const Point& y1, const Point& y2);

struct Neighbor {
    std::size_t index;
    Point point;
    double dist;
};

/// All cloud points strictly within distance r of a, excluding points
/// coincident with a. Sorted by ascending distance, ties by index.
/// The result does not depend on whether a spatial index is in use.
std::vector<Neighbor> radius_query(const PointCloud& cloud, const Point& a, double r);

} // namespace curvest
