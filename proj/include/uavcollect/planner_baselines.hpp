#pragma once

#include "uavcollect/channel.hpp"
#include "uavcollect/clustering.hpp"
#include "uavcollect/mission.hpp"
#include "uavcollect/partition.hpp"

namespace uavcollect {

/// Tandem relay planner. The outermost UAV visits every CP along one global
/// TSP tour while the others sit on the segment from the BS to it, evenly
/// spaced when that keeps every hop in range and otherwise spaced in
/// proportion to each hop's link range. One CP is collected per step. Throws
/// InfeasibleConfiguration when a hop exceeds the link range.
MissionPlan plan_ttp(const Scenario& scenario, const ClusterSet& cs, const Topology& topo,
                     const CoverageRadii& radii);

/// Sweep planner. CPs are served one at a time in order of polar angle about
/// the BS (ties: nearer first) by the UAV owning that ring; every other UAV
/// waits on the same ray at its ring midpoint, pulled in or out as needed to
/// keep the chain linked. Throws InfeasibleConfiguration when no such radius
/// exists.
MissionPlan plan_cstp(const Scenario& scenario, const ClusterSet& cs, const Topology& topo,
                      const CoverageRadii& radii);

} // namespace uavcollect
