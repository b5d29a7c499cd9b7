#include "goigrid/error.hpp"
#include "goigrid/pipeline.hpp"
#include "goigrid/svl.hpp"
#include "fig1.hpp"
#include "support.hpp"

#include <gtest/gtest.h>

using namespace goigrid;

namespace {

std::vector<std::int64_t> labels_of(const std::vector<SvlEntry>& svl) {
    std::vector<std::int64_t> out;
    for (const auto& e : svl) out.push_back(e.label);
    return out;
}

} // namespace

TEST(Fig1Labelling, IntersectionFollowsContainment) {
    const auto fig = test::fig1_instance();
    const FinalGrid grid = partition_trajectory(fig.trajectory, fig.destinations, 5.0, Metric::gs);
    const auto svl = label_by_intersection(fig.trajectory, grid);
    EXPECT_EQ(labels_of(svl), (std::vector<std::int64_t>{1, 1, 1, 2, 3, 4}));
    for (const auto& e : svl) EXPECT_EQ(e.kind, SvlKind::goi);
    // Point-in-polygon check of the contested fix.
    EXPECT_TRUE(covers(fig.destinations[2].geometry, fig.trajectory[test::Fig1::kContested].p));
    EXPECT_FALSE(covers(fig.destinations[3].geometry, fig.trajectory[test::Fig1::kContested].p));
}

TEST(Fig1Labelling, NearestCentroidMislabelsContestedFix) {
    const auto fig = test::fig1_instance();
    const auto nnq = label_by_nnq(fig.trajectory, fig.destinations);
    EXPECT_EQ(labels_of(nnq), (std::vector<std::int64_t>{1, 1, 1, 2, 4, 4}));

    const FinalGrid grid = partition_trajectory(fig.trajectory, fig.destinations, 5.0, Metric::gs);
    const auto inter = label_by_intersection(fig.trajectory, grid);
    std::vector<std::size_t> differing;
    for (std::size_t i = 0; i < inter.size(); ++i)
        if (inter[i].label != nnq[i].label) differing.push_back(i);
    EXPECT_EQ(differing, std::vector<std::size_t>{test::Fig1::kContested});
}

TEST(Fig1Labelling, CollapseKeepsFirstOfEachRun) {
    const auto fig = test::fig1_instance();
    const FinalGrid grid = partition_trajectory(fig.trajectory, fig.destinations, 5.0, Metric::gs);
    const auto svl = label_by_intersection(fig.trajectory, grid, true);
    EXPECT_EQ(labels_of(svl), (std::vector<std::int64_t>{1, 2, 3, 4}));
    EXPECT_EQ(svl[0].t, 0);
    EXPECT_EQ(svl[1].t, 180);
}

TEST(Collapse, Idempotent) {
    const std::vector<SvlEntry> raw{{0, 1, SvlKind::goi},    {1, 1, SvlKind::goi}, {2, 1, SvlKind::filler},
                                    {3, 5, SvlKind::filler}, {4, 5, SvlKind::filler}, {5, 1, SvlKind::goi}};
    const auto once = collapse_repeats(raw);
    EXPECT_EQ(once.size(), 4u);
    EXPECT_EQ(collapse_repeats(once), once);
    EXPECT_TRUE(collapse_repeats(std::vector<SvlEntry>{}).empty());
}

TEST(Nnq, EquidistantGoesToSmallerId) {
    const std::vector<Destination> ds{test::rect_destination(8, -10, -1, -8, 1),
                                      test::rect_destination(5, 8, -1, 10, 1)};
    const auto traj = test::track({{0, 0, 0}});
    EXPECT_EQ(label_by_nnq(traj, ds)[0].label, 5);
    EXPECT_THROW(label_by_nnq(traj, {}), InvalidInput);
}

TEST(Intersection, FixOutsideGridCarriesIndex) {
    const auto fig = test::fig1_instance();
    const FinalGrid grid = partition_trajectory(fig.trajectory, fig.destinations, 5.0, Metric::gs);
    const auto other = test::track({{0, 10, 10}, {5, 20, 20}, {9, 900, 900}});
    try {
        label_by_intersection(other, grid);
        FAIL() << "expected InvalidInput";
    } catch (const InvalidInput& e) {
        EXPECT_EQ(e.index(), 2u);
    }
}

TEST(Intersection, FillerCellsLabelUnclaimedSpace) {
    const auto traj = test::track({{0, 0, 0}, {10, 3, 3}, {20, 18, 18}, {30, 20, 20}});
    const std::vector<Destination> ds{test::rect_destination(0, 0, 0, 5, 5)};
    const FinalGrid grid = partition_trajectory(traj, ds, 5.0, Metric::gs);
    const auto svl = label_by_intersection(traj, grid);
    EXPECT_EQ(svl[0].kind, SvlKind::goi);
    EXPECT_EQ(svl[1].label, 0);
    EXPECT_EQ(svl[2].kind, SvlKind::filler);
    EXPECT_GE(svl[2].label, 1);
    EXPECT_EQ(parse_label_strategy("nnq"), LabelStrategy::nnq);
    EXPECT_THROW(parse_svl_kind("poi"), InvalidInput);
}
