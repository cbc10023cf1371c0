#pragma once

#include <optional>
#include <string>
#include <vector>

#include "uavcollect/channel.hpp"
#include "uavcollect/clustering.hpp"
#include "uavcollect/geometry.hpp"
#include "uavcollect/model.hpp"
#include "uavcollect/partition.hpp"

namespace uavcollect {

/// What a UAV does while hovering at its waypoint of a step.
struct Duty {
    std::optional<std::size_t> cp;   // collecting at this CP, or escorting when empty

    static Duty collect(std::size_t k) { return Duty{k}; }
    static Duty escort() { return Duty{}; }
    bool collecting() const noexcept { return cp.has_value(); }

    friend bool operator==(const Duty&, const Duty&) = default;
};

/// One synchronized hover stop: every UAV flies straight to its waypoint, the
/// slowest at v_max, then all hover for `hover_s`.
struct MissionStep {
    std::vector<Point> waypoints;   // one per UAV
    std::vector<Duty> duties;       // one per UAV
    double hover_s = 0.0;
    double flight_s = 0.0;          // travel time into this step from the previous one
};

/// Closed mission: after the last step every UAV flies back to its step-0
/// waypoint, so start and end positions coincide. The closing leg is the
/// flight into step 0.
struct MissionPlan {
    std::size_t m_uavs = 0;
    double v_max_mps = 0.0;
    std::vector<MissionStep> steps;
};

struct CheckResult {
    std::string name;
    bool passed = true;
    std::vector<std::string> failures;
};

struct ValidationReport {
    std::vector<CheckResult> checks;

    bool all_passed() const;
    const CheckResult& check(const std::string& name) const;
};

struct Timing {
    double completion_s = 0.0;
    double flight_s = 0.0;
    double hover_s = 0.0;
};

/// Straight, synchronized motion keeps a pair linked throughout iff both the
/// start and end separations are within `limit_m`.
bool segment_connectivity_ok(Point start_i, Point end_i, Point start_j, Point end_j, double limit_m);

/// Longest minimum hover among the CPs collected in one step.
double step_hover_requirement(const std::vector<Duty>& duties, const ClusterSet& cs);

/// Recomputes every step's flight_s as the bottleneck displacement over v_max.
void retime(MissionPlan& plan);

/// Flight time into step `s` (from step s-1, or from the last step for s = 0).
double step_flight_time(const MissionPlan& plan, std::size_t s);

Timing completion_time(const MissionPlan& plan);

/// Slowest UAV's unconstrained time: max over rings of tour/v_max + hovers.
double lower_bound(const ClusterSet& cs, const Topology& topo, double v_max_mps);

/// Checks, in order: connectivity, collision, speed, coverage,
/// hover-sufficiency, return-to-start. Throws InvalidArgument on a shape
/// mismatch; check failures are reported.
ValidationReport validate(const MissionPlan& plan, const Scenario& scenario, const Topology& topo,
                          const CoverageRadii& radii, const ClusterSet& cs);

/// Samples per flight segment for the collision check.
inline constexpr int kCollisionSamples = 100;

} // namespace uavcollect
