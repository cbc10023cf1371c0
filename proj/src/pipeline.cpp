#include "uavcollect/pipeline.hpp"

#include <cstdio>
#include <sstream>

#include <json.hpp>

#include "uavcollect/errors.hpp"
#include "uavcollect/planner_baselines.hpp"

namespace uavcollect {

std::string_view algorithm_name(Algorithm a) {
    switch (a) {
    case Algorithm::Pmtp: return "pmtp";
    case Algorithm::Ttp: return "ttp";
    case Algorithm::Cstp: return "cstp";
    }
    return "?";
}

Algorithm parse_algorithm(std::string_view name) {
    for (Algorithm a : kAllAlgorithms)
        if (algorithm_name(a) == name) return a;
    throw InvalidArgument("unknown algorithm '" + std::string(name) + "' (valid: pmtp, ttp, cstp)");
}

Prepared prepare(const Scenario& scenario) {
    validate_scenario(scenario);
    Prepared p;
    p.radii = coverage_radii(scenario);
    p.clusters = cluster_sensors(scenario, p.radii);
    p.topology = build_topology(p.clusters.cp_positions(), scenario.bs_position, p.radii);
    p.lower_bound_s = lower_bound(p.clusters, p.topology, scenario.v_max_mps);
    return p;
}

PlanOutcome run_planner(const Scenario& scenario, const Prepared& prep, Algorithm algo) {
    PlanOutcome out;
    out.algorithm = algo;
    switch (algo) {
    case Algorithm::Pmtp: {
        auto r = plan_pmtp(scenario, prep.clusters, prep.topology, prep.radii);
        out.plan = std::move(r.plan);
        out.diagnostics = r.diagnostics;
        break;
    }
    case Algorithm::Ttp: out.plan = plan_ttp(scenario, prep.clusters, prep.topology, prep.radii); break;
    case Algorithm::Cstp: out.plan = plan_cstp(scenario, prep.clusters, prep.topology, prep.radii); break;
    }
    out.validation = validate(out.plan, scenario, prep.topology, prep.radii, prep.clusters);
    out.timing = completion_time(out.plan);
    out.lower_bound_s = prep.lower_bound_s;
    out.below_bound = out.timing.completion_s < prep.lower_bound_s - 1e-6;
    return out;
}

std::string report_json(const Scenario& scenario, const Prepared& prep, const PlanOutcome& out) {
    nlohmann::ordered_json j;
    j["algorithm"] = algorithm_name(out.algorithm);
    j["sensors"] = scenario.sensors.size();
    j["rng_seed"] = scenario.rng_seed;
    j["completion_s"] = out.timing.completion_s;
    j["flight_s"] = out.timing.flight_s;
    j["hover_s"] = out.timing.hover_s;
    j["lower_bound_s"] = out.lower_bound_s;
    j["gap_to_bound"] = out.lower_bound_s > 0.0 ? out.timing.completion_s / out.lower_bound_s - 1.0 : 0.0;
    j["below_bound"] = out.below_bound;
    j["steps"] = out.plan.steps.size();
    j["uavs"] = prep.topology.m_uavs;
    j["clusters"] = prep.clusters.k();
    j["radii"] = {{"r_g2u_m", prep.radii.r_g2u_m}, {"r_u2u_m", prep.radii.r_u2u_m}, {"r_u2b_m", prep.radii.r_u2b_m}};
    auto checks = nlohmann::ordered_json::array();
    for (const auto& c : out.validation.checks)
        checks.push_back({{"name", c.name}, {"passed", c.passed}, {"failures", c.failures}});
    j["checks"] = checks;
    j["valid"] = out.validation.all_passed();
    if (out.diagnostics) {
        const auto& d = *out.diagnostics;
        j["pmtp"] = {{"leader_uav", d.leader_uav + 1},
                     {"matched_pairs", d.matched_pairs},
                     {"generated_waypoints", d.generated_waypoints},
                     {"sum_form_agreements", d.sum_form_agreements},
                     {"centered_form_agreements", d.centered_form_agreements},
                     {"ring_relaxations", d.ring_relaxations}};
    }
    return j.dump(2) + "\n";
}

namespace {

std::string num(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

} // namespace

std::string plan_csv(const MissionPlan& plan) {
    std::ostringstream os;
    os << "step,uav,x,y,duty,hover_s,flight_s\n";
    for (std::size_t s = 0; s < plan.steps.size(); ++s) {
        const auto& st = plan.steps[s];
        for (std::size_t m = 0; m < plan.m_uavs; ++m) {
            os << s << ',' << m + 1 << ',' << num(st.waypoints[m].x) << ',' << num(st.waypoints[m].y) << ',';
            if (st.duties[m].collecting())
                os << *st.duties[m].cp;
            else
                os << "escort";
            os << ',' << num(st.hover_s) << ',' << num(st.flight_s) << '\n';
        }
    }
    return os.str();
}

std::string clusters_csv(const Scenario& scenario, const ClusterSet& cs) {
    std::vector<std::size_t> owner(scenario.sensors.size(), 0);
    for (std::size_t k = 0; k < cs.k(); ++k)
        for (auto i : cs.clusters[k].members) owner[i] = k;
    std::ostringstream os;
    os << "sensor_id,cluster_id\n";
    for (std::size_t i = 0; i < scenario.sensors.size(); ++i) os << scenario.sensors[i].id << ',' << owner[i] << '\n';
    return os.str();
}

std::string cp_csv(const ClusterSet& cs, const Topology& topo) {
    std::ostringstream os;
    os << "cluster_id,x,y,members,hover_s,uav\n";
    for (std::size_t k = 0; k < cs.k(); ++k) {
        const auto& c = cs.clusters[k];
        os << k << ',' << num(c.cp.x) << ',' << num(c.cp.y) << ',' << c.members.size() << ',' << num(c.min_hover_s)
           << ',' << topo.association[k] + 1 << '\n';
    }
    return os.str();
}

} // namespace uavcollect
