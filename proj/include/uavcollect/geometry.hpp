#pragma once

#include <cmath>
#include <compare>

namespace uavcollect {

/// Horizontal position in meters.
struct Point {
    double x = 0.0;
    double y = 0.0;

    friend constexpr Point operator+(Point a, Point b) { return {a.x + b.x, a.y + b.y}; }
    friend constexpr Point operator-(Point a, Point b) { return {a.x - b.x, a.y - b.y}; }
    friend constexpr Point operator*(double s, Point p) { return {s * p.x, s * p.y}; }
    friend constexpr Point operator*(Point p, double s) { return {s * p.x, s * p.y}; }
    friend constexpr bool operator==(const Point&, const Point&) = default;
};

inline double norm(Point p) { return std::hypot(p.x, p.y); }
inline double distance(Point a, Point b) { return norm(a - b); }
inline constexpr double dot(Point a, Point b) { return a.x * b.x + a.y * b.y; }

/// Point at parameter t in [0, 1] on the segment a -> b.
inline constexpr Point lerp(Point a, Point b, double t) { return a + t * (b - a); }

inline Point from_polar(Point center, double radius, double angle_rad) {
    return {center.x + radius * std::cos(angle_rad), center.y + radius * std::sin(angle_rad)};
}

/// Closest point to p on the segment a -> b.
inline Point closest_on_segment(Point p, Point a, Point b) {
    const Point ab = b - a;
    const double len2 = dot(ab, ab);
    if (len2 == 0.0) return a;
    double t = dot(p - a, ab) / len2;
    t = t < 0.0 ? 0.0 : (t > 1.0 ? 1.0 : t);
    return lerp(a, b, t);
}

/// Polar angle of p about center in [-pi, pi].
inline double polar_angle(Point p, Point center) { return std::atan2(p.y - center.y, p.x - center.x); }

} // namespace uavcollect
