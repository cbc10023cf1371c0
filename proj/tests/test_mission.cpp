#include <gtest/gtest.h>

#include <cmath>

#include "support.hpp"
#include "uavcollect/channel.hpp"
#include "uavcollect/clustering.hpp"
#include "uavcollect/errors.hpp"
#include "uavcollect/mission.hpp"
#include "uavcollect/partition.hpp"
#include "uavcollect/planner_pmtp.hpp"

namespace uc = uavcollect;

namespace {

uc::ClusterSet clusters_with_hovers(std::vector<uc::Point> cps, std::vector<double> hovers) {
    uc::ClusterSet cs;
    for (std::size_t k = 0; k < cps.size(); ++k) cs.clusters.push_back({{k}, cps[k], hovers[k]});
    return cs;
}

uc::MissionStep step(std::vector<uc::Point> w, std::vector<uc::Duty> d) { return {std::move(w), std::move(d), 0, 0}; }

struct Fixture {
    uc::Scenario scenario;
    uc::CoverageRadii radii;
    uc::ClusterSet cs;
    uc::Topology topo;
    uc::MissionPlan plan;
};

// A valid paper-scale plan to mutate.
Fixture planned(std::uint64_t seed) {
    Fixture f;
    f.scenario = uc::testing::paper_scenario(seed);
    f.radii = uc::coverage_radii(f.scenario);
    f.cs = uc::cluster_sensors(f.scenario, f.radii);
    f.topo = uc::build_topology(f.cs.cp_positions(), f.scenario.bs_position, f.radii);
    f.plan = uc::plan_pmtp(f.scenario, f.cs, f.topo, f.radii).plan;
    return f;
}

} // namespace

TEST(SegmentConnectivity, EndpointRule) {
    EXPECT_TRUE(uc::segment_connectivity_ok({0, 0}, {0, 0}, {10, 0}, {10, 0}, 10.0));
    EXPECT_FALSE(uc::segment_connectivity_ok({0, 0}, {0, 0}, {11, 0}, {0, 5}, 10.0));
    EXPECT_FALSE(uc::segment_connectivity_ok({0, 0}, {0, 0}, {0, 5}, {11, 0}, 10.0));
}

TEST(SegmentConnectivity, CrossingMotionStaysLinkedBetweenEndpoints) {
    // UAVs swap sides: endpoints exactly at the limit
    const uc::Point si{0, 0}, ei{10, 0}, sj{10, 0}, ej{0, 0};
    ASSERT_TRUE(uc::segment_connectivity_ok(si, ei, sj, ej, 10.0));
    for (int k = 1; k <= 1000; ++k) {
        const double t = k / 1001.0;
        EXPECT_LE(uc::distance(uc::lerp(si, ei, t), uc::lerp(sj, ej, t)), 10.0 + 1e-9);
    }
}

TEST(SegmentConnectivity, RandomPairsNeverExceedTheLimitInside) {
    uc::Rng rng(1);
    int positives = 0;
    for (int n = 0; n < 2000; ++n) {
        const double limit = rng.uniform(1, 100);
        const uc::Point a = uc::testing::random_point(rng, 0, 100), b = uc::testing::random_point(rng, 0, 100);
        const uc::Point c = uc::testing::random_point(rng, 0, 100), d = uc::testing::random_point(rng, 0, 100);
        if (!uc::segment_connectivity_ok(a, b, c, d, limit)) continue;
        ++positives;
        for (int k = 1; k <= 200; ++k) {
            const double t = k / 201.0;
            EXPECT_LE(uc::distance(uc::lerp(a, b, t), uc::lerp(c, d, t)), limit + 1e-9);
        }
    }
    EXPECT_GT(positives, 100);
}

TEST(CompletionTime, SingleUavTwoCps) {
    const auto cs = clusters_with_hovers({{0, 0}, {300, 400}}, {3.0, 7.0});
    uc::MissionPlan plan{1, 10.0, {step({{0, 0}}, {uc::Duty::collect(0)}), step({{300, 400}}, {uc::Duty::collect(1)})}};
    for (auto& s : plan.steps) s.hover_s = uc::step_hover_requirement(s.duties, cs);
    uc::retime(plan);
    const auto t = uc::completion_time(plan);
    EXPECT_DOUBLE_EQ(t.flight_s, 100.0);
    EXPECT_DOUBLE_EQ(t.hover_s, 10.0);
    EXPECT_DOUBLE_EQ(t.completion_s, 110.0);
}

TEST(CompletionTime, PairedCollectionTakesTheLongerHover) {
    const auto cs = clusters_with_hovers({{0, 0}, {100, 0}}, {3.0, 5.0});
    const std::vector<uc::Duty> both{uc::Duty::collect(0), uc::Duty::collect(1)};
    EXPECT_DOUBLE_EQ(uc::step_hover_requirement(both, cs), 5.0);

    uc::MissionPlan paired{2, 10.0, {step({{0, 0}, {100, 0}}, both)}};
    uc::MissionPlan split{2,
                          10.0,
                          {step({{0, 0}, {100, 0}}, {uc::Duty::collect(0), uc::Duty::escort()}),
                           step({{0, 0}, {100, 0}}, {uc::Duty::escort(), uc::Duty::collect(1)})}};
    for (auto* p : {&paired, &split}) {
        for (auto& s : p->steps) s.hover_s = uc::step_hover_requirement(s.duties, cs);
        uc::retime(*p);
    }
    EXPECT_DOUBLE_EQ(uc::completion_time(paired).completion_s, 5.0);
    EXPECT_DOUBLE_EQ(uc::completion_time(split).completion_s, 8.0);
}

TEST(CompletionTime, BottleneckUavSetsEachStepsFlight) {
    uc::MissionPlan plan{2,
                         5.0,
                         {step({{0, 0}, {0, 10}}, {uc::Duty::collect(0), uc::Duty::escort()}),
                          step({{30, 0}, {0, 60}}, {uc::Duty::collect(1), uc::Duty::escort()})}};
    uc::retime(plan);
    EXPECT_DOUBLE_EQ(plan.steps[1].flight_s, 10.0);
    EXPECT_DOUBLE_EQ(plan.steps[0].flight_s, 10.0);
    EXPECT_DOUBLE_EQ(uc::step_flight_time(plan, 1), 10.0);
}

TEST(LowerBound, SingleRingIsTourPlusHovers) {
    const auto cs = clusters_with_hovers({{0, 0}, {300, 0}, {300, 400}}, {1.0, 2.0, 3.0});
    uc::Topology topo;
    topo.m_uavs = 1;
    topo.rings = {{0.0, 1e9}};
    topo.association = {0, 0, 0};
    EXPECT_NEAR(uc::lower_bound(cs, topo, 12.0), 1200.0 / 12.0 + 6.0, 1e-12);
}

TEST(Validate, AcceptsAPlannedMission) {
    const auto f = planned(1);
    const auto rep = uc::validate(f.plan, f.scenario, f.topo, f.radii, f.cs);
    EXPECT_TRUE(rep.all_passed());
    ASSERT_EQ(rep.checks.size(), 6u);
    EXPECT_EQ(rep.checks[0].name, "connectivity");
    EXPECT_EQ(rep.checks[5].name, "return-to-start");
}

TEST(Validate, MissingCpFailsCoverageNamingIt) {
    auto f = planned(2);
    for (auto& st : f.plan.steps)
        for (auto& d : st.duties)
            if (d.collecting() && *d.cp == 3) d = uc::Duty::escort();
    const auto rep = uc::validate(f.plan, f.scenario, f.topo, f.radii, f.cs);
    const auto& cov = rep.check("coverage");
    EXPECT_FALSE(cov.passed);
    bool named = false;
    for (const auto& msg : cov.failures) named |= msg.find("CP 3 ") != std::string::npos;
    EXPECT_TRUE(named);
}

TEST(Validate, StretchedChainFailsConnectivity) {
    const auto scenario = uc::generate_scenario(100, 100, 1, 1e7, {}, 0);
    const uc::CoverageRadii radii{1000, 500, 800};
    const auto cs = clusters_with_hovers({{10, 0}}, {1.0});
    uc::Topology topo;
    topo.m_uavs = 2;
    topo.rings = {{0, 800}, {800, 1300}};
    topo.association = {0};
    uc::MissionPlan plan{2, 10.0, {step({{10, 0}, {10 + 501, 0}}, {uc::Duty::collect(0), uc::Duty::escort()})}};
    plan.steps[0].hover_s = 1.0;
    auto rep = uc::validate(plan, scenario, topo, radii, cs);
    EXPECT_FALSE(rep.check("connectivity").passed);
    EXPECT_TRUE(rep.check("coverage").passed);
    plan.steps[0].waypoints[1] = {10 + 499, 0};
    EXPECT_TRUE(uc::validate(plan, scenario, topo, radii, cs).all_passed());
}

TEST(Validate, DetectsCollisionSpeedHoverAndReturnProblems) {
    auto f = planned(3);
    auto rep = uc::validate(f.plan, f.scenario, f.topo, f.radii, f.cs);
    ASSERT_TRUE(rep.all_passed());

    auto crash = f.plan;
    crash.steps[1].waypoints[0] = crash.steps[1].waypoints[1] + uc::Point{5, 0};
    EXPECT_FALSE(uc::validate(crash, f.scenario, f.topo, f.radii, f.cs).check("collision").passed);

    auto rushed = f.plan;
    rushed.steps[2].flight_s *= 0.5;
    EXPECT_FALSE(uc::validate(rushed, f.scenario, f.topo, f.radii, f.cs).check("speed").passed);

    auto short_hover = f.plan;
    short_hover.steps[0].hover_s *= 0.5;
    EXPECT_FALSE(uc::validate(short_hover, f.scenario, f.topo, f.radii, f.cs).check("hover-sufficiency").passed);

    auto no_return = f.plan;
    no_return.steps[0].flight_s = 0.0;
    EXPECT_FALSE(uc::validate(no_return, f.scenario, f.topo, f.radii, f.cs).check("return-to-start").passed);
}

TEST(Validate, ShapeMismatchThrows) {
    auto f = planned(4);
    auto bad = f.plan;
    bad.steps[0].waypoints.pop_back();
    EXPECT_THROW(uc::validate(bad, f.scenario, f.topo, f.radii, f.cs), uc::InvalidArgument);
    bad = f.plan;
    bad.m_uavs += 1;
    EXPECT_THROW(uc::validate(bad, f.scenario, f.topo, f.radii, f.cs), uc::InvalidArgument);
}

TEST(CompletionTime, InvariantUnderRigidMotion) {
    const auto f = planned(5);
    const double th = 0.7;
    const uc::Point shift{1234.5, -987.6};
    auto moved = f.plan;
    for (auto& st : moved.steps)
        for (auto& w : st.waypoints)
            w = uc::Point{w.x * std::cos(th) - w.y * std::sin(th), w.x * std::sin(th) + w.y * std::cos(th)} + shift;
    uc::retime(moved);
    EXPECT_NEAR(uc::completion_time(moved).completion_s / uc::completion_time(f.plan).completion_s, 1.0, 1e-9);
}
