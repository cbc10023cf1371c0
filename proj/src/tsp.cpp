#include "uavcollect/tsp.hpp"

#include <algorithm>
#include <limits>

#include "uavcollect/errors.hpp"

namespace uavcollect {

double tour_length(std::span<const Point> points, std::span<const std::size_t> order) {
    double total = 0.0;
    for (std::size_t i = 0; i < order.size(); ++i)
        total += distance(points[order[i]], points[order[(i + 1) % order.size()]]);
    return total;
}

Tour nearest_neighbor_tour(std::span<const Point> points, std::size_t start) {
    const std::size_t n = points.size();
    Tour t;
    t.order.reserve(n);
    std::vector<bool> used(n, false);
    std::size_t cur = start;
    used[cur] = true;
    t.order.push_back(cur);
    for (std::size_t step = 1; step < n; ++step) {
        std::size_t best = n;
        double best_d = std::numeric_limits<double>::infinity();
        for (std::size_t j = 0; j < n; ++j) {
            if (used[j]) continue;
            const double d = distance(points[cur], points[j]);
            if (d < best_d) {
                best_d = d;
                best = j;
            }
        }
        used[best] = true;
        t.order.push_back(best);
        cur = best;
    }
    t.length_m = tour_length(points, t.order);
    return t;
}

void two_opt(std::span<const Point> points, std::vector<std::size_t>& order) {
    const std::size_t n = order.size();
    if (n < 4) return;
    auto d = [&](std::size_t a, std::size_t b) { return distance(points[order[a]], points[order[b]]); };
    bool improved = true;
    while (improved) {
        improved = false;
        for (std::size_t i = 0; i + 2 < n; ++i) {
            // edge (i, i+1) against edge (j, j+1); skip the pair sharing a node via wrap
            for (std::size_t j = i + 2; j < n; ++j) {
                const std::size_t jn = (j + 1) % n;
                if (jn == i) continue;
                const double delta = d(i, j) + d(i + 1, jn) - d(i, i + 1) - d(j, jn);
                if (delta < -1e-9) {
                    std::reverse(order.begin() + static_cast<std::ptrdiff_t>(i + 1),
                                 order.begin() + static_cast<std::ptrdiff_t>(j + 1));
                    improved = true;
                }
            }
        }
    }
}

bool or_opt(std::span<const Point> points, std::vector<std::size_t>& order) {
    const std::size_t n = order.size();
    if (n < 5) return false;
    auto d = [&](std::size_t a, std::size_t b) { return distance(points[a], points[b]); };
    for (std::size_t len = 1; len <= 3 && len + 2 <= n; ++len) {
        for (std::size_t i = 0; i < n; ++i) {
            // segment order[i .. i+len-1] (cyclic), between prev and next
            std::vector<std::size_t> seg(len);
            for (std::size_t k = 0; k < len; ++k) seg[k] = order[(i + k) % n];
            const std::size_t prev = order[(i + n - 1) % n], next = order[(i + len) % n];
            const double removed = d(prev, seg.front()) + d(seg.back(), next) - d(prev, next);
            std::vector<std::size_t> rest;
            rest.reserve(n - len);
            for (std::size_t k = 0; k < n - len; ++k) rest.push_back(order[(i + len + k) % n]);
            for (std::size_t k = 0; k < rest.size(); ++k) {
                const std::size_t a = rest[k], b = rest[(k + 1) % rest.size()];
                const double fwd = d(a, seg.front()) + d(seg.back(), b) - d(a, b);
                const double rev = d(a, seg.back()) + d(seg.front(), b) - d(a, b);
                if (std::min(fwd, rev) < removed - 1e-9) {
                    if (rev < fwd) std::reverse(seg.begin(), seg.end());
                    rest.insert(rest.begin() + static_cast<std::ptrdiff_t>(k + 1), seg.begin(), seg.end());
                    order = std::move(rest);
                    return true;
                }
            }
        }
    }
    return false;
}

Tour solve_tsp(std::span<const Point> points) {
    if (points.empty()) throw InvalidArgument("solve_tsp needs at least one point");
    Tour best;
    best.length_m = std::numeric_limits<double>::infinity();
    for (std::size_t s = 0; s < points.size(); ++s) {
        Tour t = nearest_neighbor_tour(points, s);
        do two_opt(points, t.order);
        while (or_opt(points, t.order));
        t.length_m = tour_length(points, t.order);
        if (t.length_m < best.length_m - 1e-9) best = std::move(t);
    }
    // canonical rotation: start at the lowest point index
    auto it = std::min_element(best.order.begin(), best.order.end());
    std::rotate(best.order.begin(), it, best.order.end());
    return best;
}

double path_distance_between(std::span<const Point> points, const Tour& tour, std::size_t from, std::size_t to) {
    const auto& o = tour.order;
    auto fi = std::find(o.begin(), o.end(), from);
    auto ti = std::find(o.begin(), o.end(), to);
    if (fi == o.end() || ti == o.end()) throw InvalidArgument("path_distance_between: point not on tour");
    const std::size_t n = o.size();
    std::size_t i = static_cast<std::size_t>(fi - o.begin());
    const std::size_t end = static_cast<std::size_t>(ti - o.begin());
    double total = 0.0;
    while (i != end) {
        total += distance(points[o[i]], points[o[(i + 1) % n]]);
        i = (i + 1) % n;
    }
    return total;
}

} // namespace uavcollect
