#include "goigrid/error.hpp"
#include "goigrid/oracle.hpp"
#include "goigrid/stays.hpp"
#include "support.hpp"

#include <gtest/gtest.h>

using namespace goigrid;
using goigrid::test::track;

namespace {

StayParams params(double t_min, double d_max = 100.0) {
    StayParams p;
    p.t_min = t_min;
    p.d_max = d_max;
    return p;
}

void expect_same_stays(const std::vector<Stay>& a, const std::vector<Stay>& b) {
    ASSERT_EQ(a.size(), b.size());
    for (std::size_t k = 0; k < a.size(); ++k) {
        EXPECT_EQ(a[k].id, b[k].id);
        EXPECT_EQ(a[k].first_index, b[k].first_index);
        EXPECT_EQ(a[k].ps, b[k].ps);
        EXPECT_EQ(a[k].at, b[k].at);
        EXPECT_EQ(a[k].dt, b[k].dt);
        EXPECT_EQ(a[k].g, b[k].g);
    }
}

constexpr StayMethod kMethods[] = {StayMethod::twc, StayMethod::reference_point, StayMethod::diameter};

} // namespace

TEST(TwcStays, HandTrace) {
    // The breakout fix at t=100 has tv=50, so departure is 150.
    const auto traj = track({{0, 0, 0}, {30, 10, 0}, {70, 0, 10}, {100, 500, 0}, {150, 1000, 0}});
    TwcStats stats;
    const auto stays = extract_stays_twc(traj, params(90), &stats);
    ASSERT_EQ(stays.size(), 1u);
    EXPECT_EQ(stays[0].at, 0);
    EXPECT_EQ(stays[0].dt, 150);
    EXPECT_EQ(stays[0].ps.size(), 3u);
    EXPECT_EQ(stays[0].first_index, 0u);
    EXPECT_EQ(stats.out_of_radius_admissions, 1u); // the t=150 fix, too early to close

    const auto ref = extract_stays_reference_point(traj, params(90));
    ASSERT_EQ(ref.size(), 1u);
    EXPECT_EQ(ref[0].at, 0);
    EXPECT_EQ(ref[0].dt, 100);
}

TEST(TwcStays, GeometryIsBufferedHullWithCentroid) {
    const auto traj = track({{0, 0, 0}, {30, 10, 0}, {70, 0, 10}, {100, 500, 0}, {150, 1000, 0}});
    const auto s = extract_stays_twc(traj, params(90)).at(0);
    const std::vector<PlanarPoint> xy{{0, 0}, {10, 0}, {0, 10}};
    EXPECT_EQ(s.g, buffer(convex_hull(xy), 10.0));
    EXPECT_EQ(s.c, s.g.centroid());
    for (const auto& p : s.ps) EXPECT_TRUE(covers(s.g, p.p));
}

TEST(TwcStays, SingleFixBeforeLongGap) {
    const auto traj = track({{0, 0, 0}, {7200, 5000, 0}});
    const auto stays = extract_stays_twc(traj, params(3600));
    ASSERT_EQ(stays.size(), 1u);
    EXPECT_EQ(stays[0].ps.size(), 1u);
    EXPECT_EQ(stays[0].at, 0);
    EXPECT_EQ(stays[0].dt, 7200);
    EXPECT_NEAR(area(stays[0].g), 314.159, 0.02 * 314.159);

    EXPECT_TRUE(extract_stays_reference_point(traj, params(3600)).empty());
    EXPECT_TRUE(extract_stays_diameter(traj, params(3600)).empty());
}

TEST(TwcStays, ShortTrajectoryHasNoStays) {
    const auto traj = track({{0, 0, 0}, {10, 0, 0}});
    for (auto m : kMethods) EXPECT_TRUE(extract_stays(traj, params(3600), m).empty());
}

TEST(TwcStays, OpenTailIsNotEmitted) {
    // Nothing ever breaks out, so no stay closes.
    const auto traj = track({{0, 0, 0}, {3000, 5, 0}, {9000, 0, 5}});
    for (auto m : kMethods) EXPECT_TRUE(extract_stays(traj, params(3600), m).empty());
}

TEST(DiameterStays, AlternatingFarPointsNeverDwell) {
    const auto traj = track({{0, 0, 0}, {4000, 300, 0}, {8000, 0, 0}, {12000, 300, 0}});
    EXPECT_TRUE(extract_stays_diameter(traj, params(3600)).empty());
}

TEST(DiameterStays, CollinearSpacing) {
    // 0-150 fits within 200 m, adding 300 does not.
    const auto traj = track({{0, 0, 0}, {2000, 150, 0}, {4000, 300, 0}, {4100, 450, 0}});
    const auto stays = extract_stays_diameter(traj, params(3600));
    ASSERT_EQ(stays.size(), 1u);
    EXPECT_EQ(stays[0].ps.size(), 2u);
    EXPECT_EQ(stays[0].at, 0);
    EXPECT_EQ(stays[0].dt, 4000);
}

TEST(Stays, InvalidParameters) {
    const auto traj = track({{0, 0, 0}});
    StayParams p;
    p.d_max = 0;
    EXPECT_THROW(extract_stays_twc(traj, p), InvalidInput);
    p = StayParams{};
    p.buffer_width = -1;
    EXPECT_THROW(extract_stays_diameter(traj, p), InvalidInput);
    EXPECT_THROW(parse_stay_method("kmeans"), InvalidInput);
    EXPECT_EQ(parse_stay_method("refpoint"), StayMethod::reference_point);
}

TEST(Stays, InvariantsOnRandomTrajectories) {
    for (std::uint64_t seed = 1; seed <= 40; ++seed) {
        const auto traj = test::random_trajectory(seed, 400);
        const StayParams p = params(1800);
        for (auto m : kMethods) {
            const auto stays = extract_stays(traj, p, m);
            for (std::size_t k = 0; k < stays.size(); ++k) {
                const auto& s = stays[k];
                EXPECT_EQ(s.id, static_cast<int>(k));
                EXPECT_GE(static_cast<double>(s.dt - s.at), p.t_min);
                EXPECT_EQ(s.at, s.ps.front().t);
                EXPECT_EQ(s.ps.front(), traj[s.first_index]);
                EXPECT_EQ(s.ps.back(), traj[s.last_index()]);
                if (m != StayMethod::twc) {
                    EXPECT_GE(s.ps.size(), 2u);
                }
                if (k > 0) {
                    EXPECT_GT(s.first_index, stays[k - 1].last_index());
                }
                for (const auto& q : s.ps) {
                    EXPECT_TRUE(covers(s.g, q.p));
                    if (m == StayMethod::reference_point) {
                        EXPECT_LE(euclidean_distance(q.p, s.ps.front().p), p.d_max);
                    }
                }
            }
        }
    }
}

TEST(StayOracle, AgreesOnRandomTrajectories) {
    for (std::uint64_t seed = 1; seed <= 200; ++seed) {
        const auto traj = test::random_trajectory(seed, 50 + seed % 200);
        const StayParams p = params(seed % 2 ? 3600 : 900, seed % 3 ? 100 : 60);
        for (auto m : kMethods) {
            SCOPED_TRACE(testing::Message() << "seed " << seed << " method " << to_string(m));
            expect_same_stays(extract_stays(traj, p, m), brute_force_stay_oracle(traj, p, m));
        }
    }
}

TEST(StayOracle, AgreesOnCoincidentFixes) {
    // Identical positions with a far final fix that closes the dwell.
    const auto traj = track({{0, 5, 5}, {600, 5, 5}, {1200, 5, 5}, {4000, 5, 5}, {4100, 900, 900}});
    for (auto m : kMethods) {
        const auto stays = extract_stays(traj, params(3600), m);
        ASSERT_EQ(stays.size(), 1u) << to_string(m);
        EXPECT_EQ(stays[0].ps.size(), 4u);
        expect_same_stays(stays, brute_force_stay_oracle(traj, params(3600), m));
    }
}

TEST(StayOracle, RefusesLongInput) {
    const auto traj = test::random_trajectory(1, kOracleMaxPoints + 1);
    EXPECT_THROW(brute_force_stay_oracle(traj, StayParams{}, StayMethod::twc), InvalidInput);
}
