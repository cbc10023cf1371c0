#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "uavcollect/geometry.hpp"

namespace uavcollect {

struct Circle {
    Point center;
    double radius = 0.0;
};

/// Planar set cut out by disks: inside every `inside` circle, outside every
/// `outside` circle (boundaries included).
struct Region {
    std::vector<Circle> inside;
    std::vector<Circle> outside;

    bool contains(Point q, double slack_m = 0.0) const;

    /// Same region with every boundary pulled inward by `margin_m`.
    Region shrunk(double margin_m) const;

    /// Every boundary circle, inside constraints first.
    std::vector<Circle> boundaries() const;
};

/// Intersection points of two circles (0, 1 or 2).
std::vector<Point> circle_intersections(const Circle& a, const Circle& b);

/// Points where the segment a -> b crosses the circle.
std::vector<Point> segment_circle_intersections(Point a, Point b, const Circle& c);

/// Nearest point of the region to p. Exact for disk-bounded regions: the
/// answer is p itself, a radial projection onto one boundary, or a crossing
/// of two boundaries.
std::optional<Point> project(Point p, const Region& region);

/// Detour of visiting q between a and b: |a-q| + |q-b| - |a-b|.
inline double detour_cost(Point a, Point q, Point b) { return distance(a, q) + distance(q, b) - distance(a, b); }

struct RegionMinimum {
    Point point;
    double cost = 0.0;
};

/// Minimizes a continuous objective over the region from a candidate set:
/// `extra` points, boundary crossings, a dense sampling of every boundary
/// circle with golden-section refinement, and the crossings of the segment
/// a -> b with every boundary (a and b included). For objectives that are
/// convex with their minimum on segment a -> b (detour costs) this finds the
/// constrained minimum.
std::optional<RegionMinimum> minimize_over_region(const Region& region, const std::function<double(Point)>& objective,
                                                  Point a, Point b, const std::vector<Point>& extra = {});

} // namespace uavcollect
