#include "uavcollect/region.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace uavcollect {

bool Region::contains(Point q, double slack_m) const {
    for (const auto& c : inside)
        if (distance(q, c.center) > c.radius + slack_m) return false;
    for (const auto& c : outside)
        if (distance(q, c.center) < c.radius - slack_m) return false;
    return true;
}

Region Region::shrunk(double margin_m) const {
    Region r = *this;
    for (auto& c : r.inside) c.radius = std::max(0.0, c.radius - margin_m);
    for (auto& c : r.outside)
        if (c.radius > 0.0) c.radius += margin_m;
    return r;
}

std::vector<Circle> Region::boundaries() const {
    std::vector<Circle> out = inside;
    for (const auto& c : outside)
        if (c.radius > 0.0) out.push_back(c);
    return out;
}

std::vector<Point> circle_intersections(const Circle& a, const Circle& b) {
    const Point d = b.center - a.center;
    const double dist = norm(d);
    if (dist == 0.0 || dist > a.radius + b.radius || dist < std::abs(a.radius - b.radius)) return {};
    const double along = (a.radius * a.radius - b.radius * b.radius + dist * dist) / (2.0 * dist);
    const double h = std::sqrt(std::max(0.0, a.radius * a.radius - along * along));
    const Point u = (1.0 / dist) * d;
    const Point base = a.center + along * u;
    const Point perp{-u.y, u.x};
    if (h == 0.0) return {base};
    return {base + h * perp, base - h * perp};
}

std::vector<Point> segment_circle_intersections(Point a, Point b, const Circle& c) {
    const Point d = b - a;
    const Point f = a - c.center;
    const double qa = dot(d, d);
    if (qa == 0.0) return {};
    const double qb = 2.0 * dot(f, d);
    const double qc = dot(f, f) - c.radius * c.radius;
    const double disc = qb * qb - 4.0 * qa * qc;
    if (disc < 0.0) return {};
    const double sq = std::sqrt(disc);
    std::vector<Point> out;
    for (double t : {(-qb - sq) / (2.0 * qa), (-qb + sq) / (2.0 * qa)})
        if (t >= 0.0 && t <= 1.0) out.push_back(lerp(a, b, t));
    return out;
}

namespace {

constexpr double kFeasSlack = 1e-9;

Point radial_projection(Point p, const Circle& c) {
    const Point d = p - c.center;
    const double len = norm(d);
    if (len == 0.0) return c.center + Point{c.radius, 0.0};
    return c.center + (c.radius / len) * d;
}

void add_crossings(const std::vector<Circle>& circles, std::vector<Point>& out) {
    for (std::size_t i = 0; i < circles.size(); ++i)
        for (std::size_t j = i + 1; j < circles.size(); ++j)
            for (Point q : circle_intersections(circles[i], circles[j])) out.push_back(q);
}

} // namespace

std::optional<Point> project(Point p, const Region& region) {
    if (region.contains(p)) return p;
    const auto circles = region.boundaries();
    std::vector<Point> cands;
    for (const auto& c : circles) cands.push_back(radial_projection(p, c));
    add_crossings(circles, cands);

    std::optional<Point> best;
    double best_d = std::numeric_limits<double>::infinity();
    for (Point q : cands) {
        if (!region.contains(q, kFeasSlack)) continue;
        const double d = distance(p, q);
        if (d < best_d) {
            best_d = d;
            best = q;
        }
    }
    return best;
}

std::optional<RegionMinimum> minimize_over_region(const Region& region, const std::function<double(Point)>& objective,
                                                  Point a, Point b, const std::vector<Point>& extra) {
    std::optional<RegionMinimum> best;
    auto consider = [&](Point q) {
        if (!region.contains(q, kFeasSlack)) return;
        const double v = objective(q);
        if (!best || v < best->cost) best = RegionMinimum{q, v};
    };

    for (Point q : extra) consider(q);
    const auto circles = region.boundaries();
    std::vector<Point> cands{a, b};
    add_crossings(circles, cands);
    for (const auto& c : circles)
        for (Point q : segment_circle_intersections(a, b, c)) cands.push_back(q);
    for (Point q : cands) consider(q);

    constexpr int kSamples = 720;
    constexpr double kStep = 2.0 * std::numbers::pi / kSamples;
    for (const auto& c : circles) {
        if (c.radius <= 0.0) continue;
        int best_i = -1;
        double best_v = std::numeric_limits<double>::infinity();
        for (int i = 0; i < kSamples; ++i) {
            const Point q = from_polar(c.center, c.radius, i * kStep);
            if (!region.contains(q, kFeasSlack)) continue;
            const double v = objective(q);
            if (v < best_v) {
                best_v = v;
                best_i = i;
            }
        }
        if (best_i < 0) continue;
        consider(from_polar(c.center, c.radius, best_i * kStep));

        // golden-section on the angle around the best sample
        const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
        double lo = (best_i - 1) * kStep, hi = (best_i + 1) * kStep;
        auto f = [&](double th) {
            const Point q = from_polar(c.center, c.radius, th);
            return region.contains(q, kFeasSlack) ? objective(q) : std::numeric_limits<double>::infinity();
        };
        double x1 = hi - gr * (hi - lo), x2 = lo + gr * (hi - lo);
        double f1 = f(x1), f2 = f(x2);
        for (int it = 0; it < 60; ++it) {
            if (f1 <= f2) {
                hi = x2;
                x2 = x1;
                f2 = f1;
                x1 = hi - gr * (hi - lo);
                f1 = f(x1);
            } else {
                lo = x1;
                x1 = x2;
                f1 = f2;
                x2 = lo + gr * (hi - lo);
                f2 = f(x2);
            }
        }
        consider(from_polar(c.center, c.radius, 0.5 * (lo + hi)));
    }
    return best;
}

} // namespace uavcollect
