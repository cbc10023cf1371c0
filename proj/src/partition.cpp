#include "uavcollect/partition.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "uavcollect/errors.hpp"

namespace uavcollect {

bool Topology::in_ring(std::size_t uav, Point p, double slack_m) const {
    const double d = distance(p, bs);
    const Ring& r = rings.at(uav);
    return d >= r.inner_m - slack_m && d <= r.outer_m + slack_m;
}

std::vector<std::size_t> Topology::cps_of(std::size_t uav) const {
    std::vector<std::size_t> out;
    for (std::size_t k = 0; k < association.size(); ++k)
        if (association[k] == uav) out.push_back(k);
    return out;
}

std::size_t ring_index(double d, const CoverageRadii& radii) {
    if (d <= radii.r_u2b_m) return 0;
    auto outer = [&](std::size_t m) { return radii.r_u2b_m + static_cast<double>(m) * radii.r_u2u_m; };
    auto m = static_cast<std::size_t>(std::max(1.0, std::ceil((d - radii.r_u2b_m) / radii.r_u2u_m)));
    // ceil() on the rounded quotient can be off by one right at an edge
    while (d > outer(m)) ++m;
    while (m > 1 && d <= outer(m - 1)) --m;
    return m;
}

std::size_t required_uav_count(std::span<const Point> cps, Point bs, const CoverageRadii& radii) {
    if (cps.empty()) throw InvalidArgument("at least one CP is required");
    double d_max = 0.0;
    for (Point p : cps) d_max = std::max(d_max, distance(p, bs));
    return ring_index(d_max, radii) + 1;
}

std::vector<Ring> ring_bounds(std::size_t m_uavs, const CoverageRadii& radii) {
    std::vector<Ring> rings;
    rings.reserve(m_uavs);
    for (std::size_t m = 0; m < m_uavs; ++m) {
        if (m == 0)
            rings.push_back({0.0, radii.r_u2b_m});
        else
            rings.push_back({radii.r_u2b_m + static_cast<double>(m - 1) * radii.r_u2u_m,
                             radii.r_u2b_m + static_cast<double>(m) * radii.r_u2u_m});
    }
    return rings;
}

std::vector<std::size_t> associate(std::span<const Point> cps, Point bs, const CoverageRadii& radii,
                                   std::size_t m_uavs) {
    std::vector<std::size_t> out;
    out.reserve(cps.size());
    for (std::size_t k = 0; k < cps.size(); ++k) {
        const std::size_t m = ring_index(distance(cps[k], bs), radii);
        if (m >= m_uavs)
            throw InfeasibleTopology("CP " + std::to_string(k) + " lies beyond the outermost ring");
        out.push_back(m);
    }
    return out;
}

Topology build_topology(std::span<const Point> cps, Point bs, const CoverageRadii& radii) {
    Topology t;
    t.bs = bs;
    t.m_uavs = required_uav_count(cps, bs, radii);
    t.rings = ring_bounds(t.m_uavs, radii);
    t.association = associate(cps, bs, radii, t.m_uavs);
    return t;
}

} // namespace uavcollect
