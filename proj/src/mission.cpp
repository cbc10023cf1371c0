#include "uavcollect/mission.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <string>

#include "uavcollect/errors.hpp"
#include "uavcollect/tsp.hpp"

namespace uavcollect {

namespace {

constexpr double kRelTol = 1e-9;
constexpr double kCpPositionTol = 1e-6;
constexpr std::size_t kMaxReportedFailures = 20;

bool within(double d, double limit) { return d <= limit * (1.0 + kRelTol) + kRelTol; }

void fail(CheckResult& c, std::string msg) {
    c.passed = false;
    if (c.failures.size() < kMaxReportedFailures) c.failures.push_back(std::move(msg));
}

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

std::size_t prev_step(std::size_t s, std::size_t n) { return s == 0 ? n - 1 : s - 1; }

} // namespace

bool ValidationReport::all_passed() const {
    return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.passed; });
}

const CheckResult& ValidationReport::check(const std::string& name) const {
    for (const auto& c : checks)
        if (c.name == name) return c;
    throw InvalidArgument("no check named '" + name + "'");
}

bool segment_connectivity_ok(Point start_i, Point end_i, Point start_j, Point end_j, double limit_m) {
    return std::max(distance(start_i, start_j), distance(end_i, end_j)) <= limit_m;
}

double step_hover_requirement(const std::vector<Duty>& duties, const ClusterSet& cs) {
    double h = 0.0;
    for (const auto& d : duties)
        if (d.collecting()) h = std::max(h, cs.clusters.at(*d.cp).min_hover_s);
    return h;
}

double step_flight_time(const MissionPlan& plan, std::size_t s) {
    const auto& steps = plan.steps;
    const auto& from = steps[prev_step(s, steps.size())].waypoints;
    const auto& to = steps[s].waypoints;
    double worst = 0.0;
    for (std::size_t m = 0; m < plan.m_uavs; ++m) worst = std::max(worst, distance(from[m], to[m]));
    return worst / plan.v_max_mps;
}

void retime(MissionPlan& plan) {
    for (std::size_t s = 0; s < plan.steps.size(); ++s) plan.steps[s].flight_s = step_flight_time(plan, s);
}

Timing completion_time(const MissionPlan& plan) {
    Timing t;
    for (std::size_t s = 0; s < plan.steps.size(); ++s) {
        t.flight_s += step_flight_time(plan, s);
        t.hover_s += plan.steps[s].hover_s;
    }
    t.completion_s = t.flight_s + t.hover_s;
    return t;
}

double lower_bound(const ClusterSet& cs, const Topology& topo, double v_max_mps) {
    double bound = 0.0;
    for (std::size_t m = 0; m < topo.m_uavs; ++m) {
        const auto ks = topo.cps_of(m);
        if (ks.empty()) continue;
        std::vector<Point> pts;
        double hover = 0.0;
        for (auto k : ks) {
            pts.push_back(cs.clusters[k].cp);
            hover += cs.clusters[k].min_hover_s;
        }
        bound = std::max(bound, solve_tsp(pts).length_m / v_max_mps + hover);
    }
    return bound;
}

ValidationReport validate(const MissionPlan& plan, const Scenario& scenario, const Topology& topo,
                          const CoverageRadii& radii, const ClusterSet& cs) {
    const std::size_t M = plan.m_uavs;
    if (M != topo.m_uavs) throw InvalidArgument("plan UAV count does not match topology");
    if (plan.steps.empty()) throw InvalidArgument("plan has no steps");
    if (!(plan.v_max_mps > 0.0)) throw InvalidArgument("plan v_max must be positive");
    for (const auto& st : plan.steps)
        if (st.waypoints.size() != M || st.duties.size() != M)
            throw InvalidArgument("every step needs one waypoint and one duty per UAV");

    const Point bs = scenario.bs_position;
    const std::size_t S = plan.steps.size();
    CheckResult conn{"connectivity", true, {}}, coll{"collision", true, {}}, speed{"speed", true, {}}, cover{"coverage", true, {}},
        hover{"hover-sufficiency", true, {}}, ret{"return-to-start", true, {}};

    for (std::size_t s = 0; s < S; ++s) {
        const auto& w = plan.steps[s].waypoints;
        const auto& wp = plan.steps[prev_step(s, S)].waypoints;
        const std::string at = "step " + std::to_string(s);

        // chain BS - u1 - ... - uM at the waypoints
        if (!within(distance(w[0], bs), radii.r_u2b_m))
            fail(conn, at + ": UAV 1 is " + fmt(distance(w[0], bs)) + " m from the BS");
        for (std::size_t m = 1; m < M; ++m)
            if (!within(distance(w[m], w[m - 1]), radii.r_u2u_m))
                fail(conn, at + ": UAVs " + std::to_string(m) + "-" + std::to_string(m + 1) + " are " +
                               fmt(distance(w[m], w[m - 1])) + " m apart");

        // flight segment into this step: endpoint condition per adjacent pair
        if (!within(std::max(distance(wp[0], bs), distance(w[0], bs)), radii.r_u2b_m))
            fail(conn, at + ": BS link breaks on the inbound segment");
        for (std::size_t m = 1; m < M; ++m) {
            const double worst = std::max(distance(wp[m], wp[m - 1]), distance(w[m], w[m - 1]));
            if (!within(worst, radii.r_u2u_m))
                fail(conn, at + ": UAVs " + std::to_string(m) + "-" + std::to_string(m + 1) +
                               " lose the link on the inbound segment");
        }

        // collision at waypoints and along the inbound segment
        for (std::size_t i = 0; i < M; ++i) {
            for (std::size_t j = i + 1; j < M; ++j) {
                double closest = distance(w[i], w[j]);
                for (int k = 1; k <= kCollisionSamples; ++k) {
                    const double t = static_cast<double>(k) / (kCollisionSamples + 1);
                    closest = std::min(closest, distance(lerp(wp[i], w[i], t), lerp(wp[j], w[j], t)));
                }
                if (closest < scenario.d_safe_m * (1.0 - kRelTol))
                    fail(coll, at + ": UAVs " + std::to_string(i + 1) + " and " + std::to_string(j + 1) +
                                   " come within " + fmt(closest) + " m");
            }
        }

        // speed: synchronized arrival, nobody faster than v_max
        const double ft = plan.steps[s].flight_s;
        for (std::size_t m = 0; m < M; ++m) {
            const double d = distance(wp[m], w[m]);
            if (!within(d, plan.v_max_mps * ft))
                fail(speed, at + ": UAV " + std::to_string(m + 1) + " must fly " + fmt(d) + " m in " + fmt(ft) + " s");
        }

        // at least one collection per step
        const auto& duties = plan.steps[s].duties;
        if (std::none_of(duties.begin(), duties.end(), [](const Duty& d) { return d.collecting(); }))
            fail(cover, at + ": no UAV is collecting");
    }

    // every CP collected exactly once, at its position, for long enough
    std::vector<int> visits(cs.k(), 0);
    for (std::size_t s = 0; s < S; ++s) {
        const auto& st = plan.steps[s];
        for (std::size_t m = 0; m < M; ++m) {
            if (!st.duties[m].collecting()) continue;
            const std::size_t k = *st.duties[m].cp;
            if (k >= cs.k()) {
                fail(cover, "step " + std::to_string(s) + ": unknown CP " + std::to_string(k));
                continue;
            }
            ++visits[k];
            if (distance(st.waypoints[m], cs.clusters[k].cp) > kCpPositionTol)
                fail(cover, "step " + std::to_string(s) + ": UAV " + std::to_string(m + 1) + " collects CP " +
                                std::to_string(k) + " away from its position");
            if (st.hover_s < cs.clusters[k].min_hover_s * (1.0 - 1e-12))
                fail(hover, "step " + std::to_string(s) + ": CP " + std::to_string(k) + " needs " +
                                fmt(cs.clusters[k].min_hover_s) + " s, step hovers " + fmt(st.hover_s) + " s");
        }
    }
    for (std::size_t k = 0; k < cs.k(); ++k) {
        if (visits[k] == 0) fail(cover, "CP " + std::to_string(k) + " is never collected");
        if (visits[k] > 1) fail(cover, "CP " + std::to_string(k) + " is collected " + std::to_string(visits[k]) + " times");
    }

    // closing leg back to the start is flown and timed
    const double closing = step_flight_time(plan, 0);
    if (plan.steps[0].flight_s < closing * (1.0 - kRelTol) - kRelTol)
        fail(ret, "return leg needs " + fmt(closing) + " s but step 0 budgets " + fmt(plan.steps[0].flight_s) + " s");

    ValidationReport rep;
    rep.checks = {conn, coll, speed, cover, hover, ret};
    return rep;
}

} // namespace uavcollect
