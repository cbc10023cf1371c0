#pragma once

#include <span>
#include <vector>

#include "uavcollect/geometry.hpp"

namespace uavcollect {

/// Closed tour over a point set. `order` is a permutation of point indices.
struct Tour {
    std::vector<std::size_t> order;
    double length_m = 0.0;
};

/// Closed-loop length of visiting `points` in `order`, return edge included.
double tour_length(std::span<const Point> points, std::span<const std::size_t> order);

/// Nearest-neighbour construction from every start, each improved by 2-opt
/// and or-opt until neither finds an improving move; the shortest result is
/// returned. Deterministic.
Tour solve_tsp(std::span<const Point> points);

/// Tour built by nearest neighbour from a single start, without improvement.
Tour nearest_neighbor_tour(std::span<const Point> points, std::size_t start);

/// Improves `order` in place with 2-opt to a local optimum.
void two_opt(std::span<const Point> points, std::vector<std::size_t>& order);

/// Applies the first improving or-opt move (relocating a run of 1 to 3
/// consecutive stops, possibly reversed). Returns false at a local optimum.
bool or_opt(std::span<const Point> points, std::vector<std::size_t>& order);

/// Length along the tour going forward from point index `from` to point
/// index `to`. Both must be on the tour.
double path_distance_between(std::span<const Point> points, const Tour& tour, std::size_t from, std::size_t to);

} // namespace uavcollect
