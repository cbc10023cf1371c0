#pragma once

#include <span>
#include <vector>

#include "uavcollect/channel.hpp"
#include "uavcollect/geometry.hpp"

namespace uavcollect {

/// Annulus about the BS. Ring 0 is the disk of radius r_u2b; ring m >= 1 spans
/// [r_u2b + (m-1) r_u2u, r_u2b + m r_u2u].
struct Ring {
    double inner_m = 0.0;
    double outer_m = 0.0;
};

struct Topology {
    std::size_t m_uavs = 0;
    Point bs;
    std::vector<Ring> rings;                 // one per UAV, index = UAV index (0-based)
    std::vector<std::size_t> association;    // CP index -> UAV index

    bool in_ring(std::size_t uav, Point p, double slack_m = 0.0) const;
    std::vector<std::size_t> cps_of(std::size_t uav) const;
};

/// Ring index of a point at the given BS distance. Points exactly on a ring
/// edge belong to the inner ring.
std::size_t ring_index(double distance_to_bs_m, const CoverageRadii& radii);

/// Minimum UAV count so that the farthest CP is inside the outermost ring.
std::size_t required_uav_count(std::span<const Point> cps, Point bs, const CoverageRadii& radii);

std::vector<Ring> ring_bounds(std::size_t m_uavs, const CoverageRadii& radii);

/// CP -> UAV association by ring membership. Throws InfeasibleTopology when a
/// CP lies beyond the outermost ring.
std::vector<std::size_t> associate(std::span<const Point> cps, Point bs, const CoverageRadii& radii,
                                   std::size_t m_uavs);

Topology build_topology(std::span<const Point> cps, Point bs, const CoverageRadii& radii);

} // namespace uavcollect
