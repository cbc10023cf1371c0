#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "uavcollect/channel.hpp"
#include "uavcollect/clustering.hpp"
#include "uavcollect/mission.hpp"
#include "uavcollect/partition.hpp"
#include "uavcollect/planner_pmtp.hpp"

namespace uavcollect {

enum class Algorithm { Pmtp, Ttp, Cstp };

inline constexpr Algorithm kAllAlgorithms[] = {Algorithm::Pmtp, Algorithm::Ttp, Algorithm::Cstp};

std::string_view algorithm_name(Algorithm a);
/// Throws InvalidArgument listing the valid names.
Algorithm parse_algorithm(std::string_view name);

/// Everything the planners share: radii, clusters, rings and the bound.
struct Prepared {
    CoverageRadii radii;
    ClusterSet clusters;
    Topology topology;
    double lower_bound_s = 0.0;
};

Prepared prepare(const Scenario& scenario);

struct PlanOutcome {
    Algorithm algorithm = Algorithm::Pmtp;
    MissionPlan plan;
    ValidationReport validation;
    Timing timing;
    double lower_bound_s = 0.0;
    bool below_bound = false;   // completion under the bound: an evaluator bug
    std::optional<PlanDiagnostics> diagnostics;
};

PlanOutcome run_planner(const Scenario& scenario, const Prepared& prep, Algorithm algo);

std::string report_json(const Scenario& scenario, const Prepared& prep, const PlanOutcome& out);

/// Columns: step, uav, x, y, duty, hover_s, flight_s (duty is a CP index or "escort").
std::string plan_csv(const MissionPlan& plan);

/// Columns: sensor_id, cluster_id.
std::string clusters_csv(const Scenario& scenario, const ClusterSet& cs);

/// Columns: cluster_id, x, y, members, hover_s, uav.
std::string cp_csv(const ClusterSet& cs, const Topology& topo);

} // namespace uavcollect
