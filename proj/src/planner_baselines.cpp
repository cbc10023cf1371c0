#include "uavcollect/planner_baselines.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "uavcollect/errors.hpp"
#include "uavcollect/tsp.hpp"

namespace uavcollect {

namespace {

// Neighbouring UAVs on one ray keep twice the safety distance so that the
// straight legs between rays stay clear as well.
constexpr double kRayGapFactor = 2.0;

void finish(MissionPlan& plan, const ClusterSet& cs) {
    for (auto& st : plan.steps) st.hover_s = step_hover_requirement(st.duties, cs);
    retime(plan);
}

} // namespace

MissionPlan plan_ttp(const Scenario& scenario, const ClusterSet& cs, const Topology& topo,
                     const CoverageRadii& radii) {
    const std::size_t M = topo.m_uavs;
    if (M == 0) throw InvalidArgument("plan_ttp needs at least one UAV");
    if (cs.k() == 0) throw InvalidArgument("plan_ttp needs at least one CP");

    const auto cps = cs.cp_positions();
    const Tour tour = solve_tsp(cps);
    const Point bs = scenario.bs_position;

    // Relays sit at fixed fractions of the BS -> collector segment, evenly
    // spaced when every hop then fits; otherwise hops scale with the link
    // range of each hop (first hop r_u2b, then r_u2u).
    std::vector<double> frac(M);
    for (std::size_t m = 0; m < M; ++m) frac[m] = static_cast<double>(m + 1) / static_cast<double>(M);
    double farthest = 0.0;
    for (Point c : cps) farthest = std::max(farthest, distance(bs, c));
    const double even_hop = farthest / static_cast<double>(M);
    if (even_hop > radii.r_u2b_m || (M > 1 && even_hop > radii.r_u2u_m)) {
        const double span = radii.r_u2b_m + static_cast<double>(M - 1) * radii.r_u2u_m;
        for (std::size_t m = 0; m < M; ++m) frac[m] = (radii.r_u2b_m + static_cast<double>(m) * radii.r_u2u_m) / span;
    }

    MissionPlan plan;
    plan.m_uavs = M;
    plan.v_max_mps = scenario.v_max_mps;
    for (std::size_t k : tour.order) {
        const Point c = cps[k];
        const double d = distance(bs, c);
        if (frac[0] * d > radii.r_u2b_m)
            throw InfeasibleConfiguration("first relay hop to CP " + std::to_string(k) + " exceeds the BS link range");
        for (std::size_t m = 1; m < M; ++m)
            if ((frac[m] - frac[m - 1]) * d > radii.r_u2u_m)
                throw InfeasibleConfiguration("relay hop to CP " + std::to_string(k) + " exceeds the UAV link range");
        MissionStep st;
        for (std::size_t m = 0; m < M; ++m) {
            st.waypoints.push_back(m + 1 == M ? c : lerp(bs, c, frac[m]));
            st.duties.push_back(m + 1 == M ? Duty::collect(k) : Duty::escort());
        }
        plan.steps.push_back(std::move(st));
    }
    finish(plan, cs);
    return plan;
}

MissionPlan plan_cstp(const Scenario& scenario, const ClusterSet& cs, const Topology& topo,
                      const CoverageRadii& radii) {
    const std::size_t M = topo.m_uavs;
    if (M == 0) throw InvalidArgument("plan_cstp needs at least one UAV");
    if (cs.k() == 0) throw InvalidArgument("plan_cstp needs at least one CP");
    if (topo.association.size() != cs.k()) throw InvalidArgument("association does not match the cluster set");

    const Point bs = scenario.bs_position;
    const auto cps = cs.cp_positions();
    std::vector<std::size_t> order(cs.k());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) {
        const double ai = polar_angle(cps[i], bs), aj = polar_angle(cps[j], bs);
        if (ai != aj) return ai < aj;
        return distance(cps[i], bs) < distance(cps[j], bs);
    });

    const double gap = kRayGapFactor * scenario.d_safe_m;
    MissionPlan plan;
    plan.m_uavs = M;
    plan.v_max_mps = scenario.v_max_mps;
    for (std::size_t k : order) {
        const std::size_t owner = topo.association[k];
        const double angle = polar_angle(cps[k], bs);
        std::vector<double> rho(M);
        for (std::size_t m = 0; m < M; ++m) {
            const Ring& r = topo.rings[m];
            rho[m] = 0.5 * (r.inner_m + r.outer_m);
        }
        rho[owner] = distance(cps[k], bs);
        for (std::size_t m = owner; m-- > 0;) {
            const double lo = rho[m + 1] - radii.r_u2u_m, hi = rho[m + 1] - gap;
            double v = std::clamp(rho[m], lo, std::max(lo, hi));
            if (m == 0) v = std::min(v, radii.r_u2b_m);
            if (v < lo || v > hi || v < 0.0)
                throw InfeasibleConfiguration("no waiting radius for UAV " + std::to_string(m + 1) + " at CP " +
                                              std::to_string(k));
            rho[m] = v;
        }
        for (std::size_t m = owner + 1; m < M; ++m) {
            const double lo = rho[m - 1] + gap, hi = rho[m - 1] + radii.r_u2u_m;
            if (lo > hi)
                throw InfeasibleConfiguration("no waiting radius for UAV " + std::to_string(m + 1) + " at CP " +
                                              std::to_string(k));
            rho[m] = std::clamp(rho[m], lo, hi);
        }
        if (rho[0] > radii.r_u2b_m)
            throw InfeasibleConfiguration("CP " + std::to_string(k) + " leaves UAV 1 out of BS range");

        MissionStep st;
        for (std::size_t m = 0; m < M; ++m) {
            st.waypoints.push_back(m == owner ? cps[k] : from_polar(bs, rho[m], angle));
            st.duties.push_back(m == owner ? Duty::collect(k) : Duty::escort());
        }
        plan.steps.push_back(std::move(st));
    }
    finish(plan, cs);
    return plan;
}

} // namespace uavcollect
