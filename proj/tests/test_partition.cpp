#include <gtest/gtest.h>

#include "support.hpp"
#include "uavcollect/channel.hpp"
#include "uavcollect/clustering.hpp"
#include "uavcollect/errors.hpp"
#include "uavcollect/partition.hpp"

namespace uc = uavcollect;

namespace {

const uc::CoverageRadii kRadii{1447.86, 3991.57, 4057.32};

} // namespace

TEST(RequiredUavCount, SmallAndBoundaryCases) {
    const std::vector<uc::Point> near{{100, 0}, {0, 4000}};
    EXPECT_EQ(uc::required_uav_count(near, {0, 0}, kRadii), 1u);
    const std::vector<uc::Point> mid{{kRadii.r_u2b_m + 0.5 * kRadii.r_u2u_m, 0}};
    EXPECT_EQ(uc::required_uav_count(mid, {0, 0}, kRadii), 2u);
    const std::vector<uc::Point> edge{{kRadii.r_u2b_m + kRadii.r_u2u_m, 0}};
    EXPECT_EQ(uc::required_uav_count(edge, {0, 0}, kRadii), 2u);
}

TEST(RequiredUavCount, PaperScaleNeedsThreeUavs) {
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
        const auto s = uc::testing::paper_scenario(seed);
        const auto radii = uc::coverage_radii(s);
        const auto cs = uc::cluster_sensors(s, radii);
        EXPECT_EQ(uc::required_uav_count(cs.cp_positions(), s.bs_position, radii), 3u);
    }
}

TEST(Rings, TileTheCoveredDisk) {
    const auto rings = uc::ring_bounds(4, kRadii);
    ASSERT_EQ(rings.size(), 4u);
    EXPECT_EQ(rings[0].inner_m, 0.0);
    EXPECT_EQ(rings[0].outer_m, kRadii.r_u2b_m);
    for (std::size_t m = 1; m < rings.size(); ++m) {
        EXPECT_EQ(rings[m].inner_m, rings[m - 1].outer_m);
        EXPECT_NEAR(rings[m].outer_m - rings[m].inner_m, kRadii.r_u2u_m, 1e-9);
    }
}

TEST(Associate, InnerRingWinsOnTheEdge) {
    const std::vector<uc::Point> cps{{kRadii.r_u2b_m / 2, 0}, {kRadii.r_u2b_m, 0}, {0, kRadii.r_u2b_m + 1}};
    const auto a = uc::associate(cps, {0, 0}, kRadii, 2);
    EXPECT_EQ(a, (std::vector<std::size_t>{0, 0, 1}));
    EXPECT_EQ(uc::ring_index(kRadii.r_u2b_m + kRadii.r_u2u_m, kRadii), 1u);
}

TEST(Associate, BeyondTheOutermostRingIsInfeasible) {
    const std::vector<uc::Point> cps{{kRadii.r_u2b_m + 10, 0}};
    EXPECT_THROW(uc::associate(cps, {0, 0}, kRadii, 1), uc::InfeasibleTopology);
    EXPECT_THROW(uc::associate(cps, {0, 0}, kRadii, 1), uc::InfeasibleConfiguration);
}

TEST(BuildTopology, EveryCpLiesInTheRingOfItsUav) {
    uc::Rng rng(17);
    for (int t = 0; t < 50; ++t) {
        std::vector<uc::Point> cps;
        for (int i = 0; i < 30; ++i) cps.push_back(uc::testing::random_point(rng, 0, 12000));
        const uc::Point bs{rng.uniform(0, 100), rng.uniform(0, 100)};
        const auto topo = uc::build_topology(cps, bs, kRadii);
        EXPECT_EQ(topo.m_uavs, uc::required_uav_count(cps, bs, kRadii));
        ASSERT_EQ(topo.association.size(), cps.size());
        std::size_t total = 0;
        for (std::size_t m = 0; m < topo.m_uavs; ++m) total += topo.cps_of(m).size();
        EXPECT_EQ(total, cps.size());
        for (std::size_t k = 0; k < cps.size(); ++k) {
            EXPECT_TRUE(topo.in_ring(topo.association[k], cps[k]));
            EXPECT_EQ(topo.association[k], uc::ring_index(uc::distance(cps[k], bs), kRadii));
        }
    }
}

TEST(Rings, EveryPointOfARingReachesThePreviousRing) {
    const auto rings = uc::ring_bounds(3, kRadii);
    uc::Rng rng(4);
    for (int i = 0; i < 1000; ++i) {
        const std::size_t m = 1 + rng.below(2);
        const double r = rng.uniform(rings[m].inner_m, rings[m].outer_m);
        // nearest point of ring m-1 is radially inward at its outer edge
        EXPECT_LE(r - rings[m - 1].outer_m, kRadii.r_u2u_m + 1e-9);
    }
}
