#pragma once

#include <functional>
#include <span>
#include <vector>

#include "uavcollect/channel.hpp"
#include "uavcollect/clustering.hpp"
#include "uavcollect/mission.hpp"
#include "uavcollect/partition.hpp"
#include "uavcollect/region.hpp"

namespace uavcollect {

// Point-matching trajectory planning.
//
// The ring whose UAV has the longest unconstrained tour (the leader) keeps its
// TSP path. Rings are then attached one at a time, working outward from the
// leader in both directions. Each attached ring (the follower) pairs its CPs
// with stops of its already-planned neighbour so both collect at once; CPs
// left without a partner get a generated waypoint inserted into the
// neighbour's path, and the follower fills every other stop with escort
// waypoints that keep the backhaul chain intact.

/// For each follower CP, the leader CPs within r_u2u (boundary included).
std::vector<std::vector<std::size_t>> connectable_sets(std::span<const Point> follower, std::span<const Point> leader,
                                                       double r_u2u_m);

struct Matching {
    std::vector<std::pair<std::size_t, std::size_t>> pairs;   // (follower index, leader index)
    std::vector<std::size_t> unmatched_follower;
    std::vector<std::size_t> unmatched_leader;
};

/// Greedy monotone matching. Walks `follower` in the given order with a
/// forward-only cursor into the cyclic `leader` sequence; a follower CP takes
/// the first candidate at or after the cursor that is connectable, has a
/// hover time at least its own, and (against the previous pair) satisfies
/// |p_f1 - p_f2| <= leader path distance between the partners. The cursor
/// never wraps past the first pair.
Matching match_pairs(std::span<const Point> follower, std::span<const double> follower_hover,
                     std::span<const Point> leader, std::span<const double> leader_hover,
                     const std::vector<std::vector<std::size_t>>& connectable);

/// Same walk with a caller-supplied admissibility test (connectivity, hover
/// order and any extra constraint) and leader path distances.
Matching match_monotone(std::size_t n_follower, std::size_t n_leader,
                        const std::function<bool(std::size_t f, std::size_t l)>& admissible,
                        std::span<const Point> follower,
                        const std::function<double(std::size_t l_from, std::size_t l_to)>& leader_path);

struct GeneratedWaypoint {
    Point waypoint;
    std::size_t edge = 0;            // inserted between path[edge] and path[edge + 1]
    double detour_m = 0.0;
    double grid_detour_m = 0.0;      // best plain polar-grid point, before refinement
    double sum_form_detour_m = -1.0;     // -1 when that closed form is infeasible
    double centered_form_detour_m = -1.0;
    bool sum_form_agrees = false;        // within 1% of the minimum
    bool centered_form_agrees = false;
};

/// Where the neighbour should detour to so it stays linked with a follower
/// hovering at `cp`: minimizes the insertion detour over every edge of the
/// open polyline `path`, subject to d_safe <= |q - cp| <= r_u2u and q in
/// `ring`. A 360 x 200 polar grid over the annulus is refined along the
/// constraint boundaries; two closed-form candidates are evaluated on the
/// chosen edge for comparison only. Throws InfeasibleWaypoint.
GeneratedWaypoint detour_waypoint(Point cp, std::span<const Point> path, double r_u2u_m, double d_safe_m,
                                  const Ring& ring, Point bs);

/// Escort point for the follower while the neighbour collects at `leader_pos`:
/// d_safe <= |q - leader_pos| <= r_u2u, |q - prev| <= prev_limit,
/// |q - next| <= next_limit, q in `ring`; minimizes the detour prev -> q ->
/// next. Throws InfeasibleWaypoint when the set is empty.
Point escort_waypoint(Point leader_pos, Point prev_wp, Point next_wp, double prev_limit_m, double next_limit_m,
                      double r_u2u_m, double d_safe_m, const Ring& ring, Point bs,
                      const std::vector<Circle>& keep_clear = {});

struct PlanDiagnostics {
    std::size_t leader_uav = 0;
    std::size_t matched_pairs = 0;
    std::size_t generated_waypoints = 0;
    std::size_t sum_form_agreements = 0;
    std::size_t centered_form_agreements = 0;
    std::size_t ring_relaxations = 0;   // placements that had to leave the UAV's ring
};

struct PmtpResult {
    MissionPlan plan;
    PlanDiagnostics diagnostics;
};

PmtpResult plan_pmtp(const Scenario& scenario, const ClusterSet& cs, const Topology& topo,
                     const CoverageRadii& radii);

} // namespace uavcollect
