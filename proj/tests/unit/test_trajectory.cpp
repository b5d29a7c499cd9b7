#include "goigrid/error.hpp"
#include "goigrid/trajectory.hpp"
#include "support.hpp"

#include <gtest/gtest.h>

#include <numeric>
#include <sstream>

using namespace goigrid;
using goigrid::test::kOrigin;
using goigrid::test::track;

TEST(TimeValues, GapToSuccessor) {
    const auto traj = track({{0, 0, 0}, {30, 0, 0}, {70, 0, 0}, {100, 0, 0}});
    std::vector<std::int64_t> tv;
    for (const auto& p : traj.points()) tv.push_back(p.tv);
    EXPECT_EQ(tv, (std::vector<std::int64_t>{30, 40, 30, 0}));
}

TEST(TimeValues, SingleFix) {
    const auto traj = track({{42, 1, 2}});
    ASSERT_EQ(traj.size(), 1u);
    EXPECT_EQ(traj[0].tv, 0);
}

TEST(TimeValues, SumTelescopes) {
    const auto traj = test::random_trajectory(7, 300);
    std::int64_t sum = 0;
    for (const auto& p : traj.points()) {
        EXPECT_GE(p.tv, 0);
        sum += p.tv;
    }
    EXPECT_EQ(sum, traj.points().back().t - traj.points().front().t);
}

TEST(Centroids, PlainAndTimeWeighted) {
    const auto traj = track({{0, 0, 0}, {10, 10, 0}, {40, 0, 10}});
    const auto& pts = traj.points();
    const auto c = centroid(pts);
    EXPECT_DOUBLE_EQ(c.x, 10.0 / 3.0);
    EXPECT_DOUBLE_EQ(c.y, 10.0 / 3.0);
    // Weights 10, 30, 0.
    const auto w = time_weighted_centroid(pts);
    EXPECT_DOUBLE_EQ(w.x, 7.5);
    EXPECT_DOUBLE_EQ(w.y, 0.0);
}

TEST(Centroids, ZeroWeightsFallBackToPlainCentroid) {
    const auto traj = track({{0, 4, 8}});
    const auto w = time_weighted_centroid(traj.points());
    EXPECT_EQ(w, (PlanarPoint{4, 8}));
    EXPECT_THROW(time_weighted_centroid(std::span<const TrackPoint>{}), InvalidInput);
    EXPECT_THROW(centroid(std::span<const TrackPoint>{}), InvalidInput);
}

TEST(Mbr, CoversAllFixes) {
    const auto traj = track({{0, -3, 2}, {1, 5, -1}, {2, 0, 9}});
    EXPECT_EQ(mbr(traj), (BoundingBox{-3, -1, 5, 9}));
}

TEST(Ingest, DuplicateTimestampNamesBothRecords) {
    const std::vector<RawRecord> recs{{0, {61.0, -150.0}}, {10, {61.0, -150.0}}, {10, {61.0, -150.0}}};
    try {
        ingest(recs);
        FAIL() << "expected InvalidInput";
    } catch (const InvalidInput& e) {
        EXPECT_EQ(e.index(), 2u);
        EXPECT_NE(std::string(e.what()).find("records 1 and 2"), std::string::npos);
    }
}

TEST(Ingest, DecreasingTimestampIsRejectedNotSorted) {
    const std::vector<RawRecord> recs{{100, {61.0, -150.0}}, {50, {61.0, -150.0}}};
    try {
        ingest(recs);
        FAIL() << "expected InvalidInput";
    } catch (const InvalidInput& e) {
        EXPECT_EQ(e.index(), 1u);
    }
}

TEST(Ingest, CoordinateRange) {
    const std::vector<RawRecord> recs{{0, {61.0, -150.0}}, {1, {91.0, -150.0}}};
    try {
        ingest(recs, kOrigin);
        FAIL() << "expected InvalidInput";
    } catch (const InvalidInput& e) {
        EXPECT_EQ(e.index(), 1u);
    }
    EXPECT_THROW(ingest(std::vector<RawRecord>{}), InvalidInput);
}

TEST(Ingest, DefaultOriginIsMeanPosition) {
    const std::vector<RawRecord> recs{{0, {60.0, -150.0}}, {1, {62.0, -148.0}}};
    const auto traj = ingest(recs);
    EXPECT_EQ(traj.origin(), (LatLon{61.0, -149.0}));
}

TEST(Csv, HeaderCommentsAndRoundTrip) {
    std::istringstream in("# recorded by unit 4\n"
                          "t,lat,lon\n"
                          "0, 61.2181, -149.9003\n"
                          "\n"
                          "60,61.2190,-149.9010\n");
    const auto recs = read_records_csv(in);
    ASSERT_EQ(recs.size(), 2u);
    EXPECT_EQ(recs[1].t, 60);
    EXPECT_DOUBLE_EQ(recs[1].position.lat, 61.2190);

    const auto traj = ingest(recs, kOrigin);
    std::ostringstream out;
    write_trajectory_csv(out, traj);
    std::istringstream again(out.str());
    const auto back = read_records_csv(again);
    ASSERT_EQ(back.size(), recs.size());
    for (std::size_t i = 0; i < recs.size(); ++i) {
        EXPECT_EQ(back[i].t, recs[i].t);
        EXPECT_NEAR(back[i].position.lat, recs[i].position.lat, 1e-6);
        EXPECT_NEAR(back[i].position.lon, recs[i].position.lon, 1e-6);
    }
}

TEST(Csv, BadLineReportsLineNumber) {
    std::istringstream in("t,lat,lon\n0,61,-150\n10,61\n");
    try {
        read_records_csv(in);
        FAIL() << "expected InvalidInput";
    } catch (const InvalidInput& e) {
        EXPECT_EQ(e.index(), 3u);
    }
}
