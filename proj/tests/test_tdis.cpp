#include "support.hpp"

#include "itpn/dbm.hpp"
#include "itpn/errors.hpp"
#include "itpn/tdis.hpp"

#include <gtest/gtest.h>

using namespace itpn;
using namespace itpn::test;

namespace {

struct Row {
    PointId point;
    std::vector<int> up;  // DS[i,t] per column
    std::vector<int> lo;  // DS[t,i] per column
    int to_now, from_now;
};

void expect_ds(const Net& net, const TdisClass& c, std::initializer_list<const char*> cols, const std::vector<Row>& rows)
{
    const auto ts = seq(net, cols);
    ASSERT_EQ(c.ds.transitions(), tset(net, cols));
    std::vector<PointId> index;
    for (const auto& r : rows)
        index.push_back(r.point);
    ASSERT_EQ(c.ds.index(), index);
    for (const auto& r : rows) {
        for (std::size_t k = 0; k < ts.size(); ++k) {
            EXPECT_EQ(c.ds.up(r.point, ts[k]), Bound(r.up[k])) << "DS[" << r.point << "," << cols.begin()[k] << "]";
            EXPECT_EQ(c.ds.lo(ts[k], r.point), Bound(r.lo[k])) << "DS[" << cols.begin()[k] << "," << r.point << "]";
        }
        EXPECT_EQ(c.ds.to_now(r.point), Bound(r.to_now)) << "DS[" << r.point << ",n]";
        EXPECT_EQ(c.ds.from_now(r.point), Bound(r.from_now)) << "DS[n," << r.point << "]";
    }
}

// full matrix over • and the columns, row-major
void expect_dc(const TdisClass& c, const std::vector<std::vector<int>>& table)
{
    ASSERT_EQ(c.dc.dim(), table.size());
    for (std::size_t r = 0; r < table.size(); ++r)
        for (std::size_t k = 0; k < table.size(); ++k)
            EXPECT_EQ(c.dc.at(r, k), Bound(table[r][k])) << "dc(" << r << "," << k << ")";
}

TdisClass along(const Net& net, std::initializer_list<const char*> names)
{
    auto c = initial_tdis(net);
    for (auto t : seq(net, names)) {
        EXPECT_TRUE(firable_tdis(net, c, t)) << net.transition_name(t);
        c = class_successor(net, c, t);
    }
    return c;
}

}  // namespace

TEST(InitialTdis, DistanceTableAtPointZero)
{
    const Net net = fig1();
    const auto c = initial_tdis(net);
    EXPECT_EQ(c.depth, 0);
    expect_ds(net, c, {"t1", "t3", "t4"}, {{0, {3, 4, 2}, {-3, -2, 0}, 0, 0}});
    EXPECT_EQ(c.dc, initial_dbm(net).d);
    EXPECT_EQ(lambda(net, c).at(0), Bound(2));
}

TEST(TdisPath, AfterT4)
{
    const Net net = fig1();
    const auto c = along(net, {"t4"});
    expect_ds(net, c, {"t1", "t2", "t3", "t7"},
              {{0, {3, 7, 4, 12}, {-3, -2, -2, -10}, 2, 0}, {1, {3, 5, 4, 10}, {-1, -2, 0, -10}, 0, 0}});
    expect_dc(c, {{0, 3, 5, 4, 10}, {-1, 0, 4, 1, 9}, {-2, 1, 0, 2, 8}, {0, 1, 5, 0, 10}, {-10, -7, -5, -6, 0}});
    const auto& pm = c.points;
    EXPECT_EQ(pm.ne_of(net.transition_index("t2")), 1);
    EXPECT_EQ(pm.ne_of(net.transition_index("t7")), 1);
    EXPECT_EQ(pm.ni_of(net.transition_index("t3")), 1);
    EXPECT_EQ(pm.na_of(net.transition_index("t3")), 0);
    EXPECT_EQ(pm.ni_of(net.transition_index("t1")), -1);
}

TEST(TdisPath, AfterT4T1)
{
    const Net net = fig1();
    const auto c = along(net, {"t4", "t1"});
    expect_ds(net, c, {"t2", "t3", "t5", "t7"},
              {{0, {7, 7, 3, 12}, {-3, -3, -3, -10}, 3, -3},
               {1, {5, 7, 3, 10}, {-2, -1, -1, -10}, 3, -1},
               {2, {4, 4, 0, 9}, {0, 0, 0, -7}, 0, 0}});
    expect_dc(c, {{0, 4, 4, 0, 9}, {0, 0, 4, 0, 8}, {0, 4, 0, 0, 9}, {0, 4, 4, 0, 9}, {-7, -5, -3, -7, 0}});
    EXPECT_EQ(c.points.ne_of(net.transition_index("t5")), 2);
}

TEST(TdisPath, AfterT4T1T2)
{
    const Net net = fig1();
    const auto c = along(net, {"t4", "t1", "t2"});
    expect_ds(net, c, {"t3", "t5", "t7"},
              {{0, {7, 3, 11}, {-4, -3, -10}, 3, -3},
               {1, {7, 3, 10}, {-2, -2, -10}, 3, -2},
               {2, {4, 0, 8}, {0, 0, -7}, 0, 0},
               {3, {4, 0, 8}, {-1, 0, -7}, 0, 0}});
    const auto t3 = net.transition_index("t3"), t5 = net.transition_index("t5");
    EXPECT_EQ(c.ds.lo(t3, 0), Bound(-4));
    EXPECT_EQ(c.dc.diff(t3, t5), Bound(-1));
    expect_dc(c, {{0, 4, 0, 8}, {-1, 0, -1, 7}, {0, 4, 0, 8}, {-7, -3, -7, 0}});
}

TEST(TdisPath, AfterT4T1T2T5)
{
    const Net net = fig1();
    const auto c = along(net, {"t4", "t1", "t2", "t5"});
    expect_ds(net, c, {"t3", "t6"},
              {{0, {7, 3}, {-4, -3}, 3, -3}, {1, {7, 3}, {-2, -2}, 3, -2}, {4, {4, 0}, {-1, 0}, 0, 0}});
    expect_dc(c, {{0, 4, 0}, {-1, 0, -1}, {0, 4, 0}});
    EXPECT_EQ(c.points.na_of(net.transition_index("t3")), 4);
    // t3 can no longer go first
    EXPECT_FALSE(firable_tdis(net, c, net.transition_index("t3")));
    EXPECT_TRUE(firable_tdis(net, c, net.transition_index("t6")));
}

TEST(TdisPath, AfterT4T1T5)
{
    const Net net = fig1();
    const auto c = along(net, {"t4", "t1", "t5"});
    expect_ds(net, c, {"t2", "t3", "t6"},
              {{0, {7, 7, 3}, {-3, -3, -3}, 3, -3}, {1, {5, 7, 3}, {-2, -1, -1}, 3, -1}, {3, {4, 4, 0}, {0, 0, 0}, 0, 0}});
    expect_dc(c, {{0, 4, 4, 0}, {0, 0, 4, 0}, {0, 4, 0, 0}, {0, 4, 4, 0}});
}

TEST(TdisInvariants, NowRowMirrorsDotRow)
{
    const Net net = fig1();
    auto c = initial_tdis(net);
    for (auto t : seq(net, {"t4", "t1", "t2", "t5", "t6"})) {
        c = class_successor(net, c, t);
        for (auto x : c.ds.transitions()) {
            EXPECT_EQ(c.ds.up(c.depth, x), c.dc.upper(x));
            EXPECT_EQ(c.ds.lo(x, c.depth), c.dc.neg_lower(x));
        }
        EXPECT_EQ(c.ds.to_now(c.depth), Bound(0));
        EXPECT_EQ(c.ds.from_now(c.depth), Bound(0));
    }
}

TEST(TdisInvariants, NonFirableIsAContractError)
{
    const Net net = fig1();
    const auto c = along(net, {"t4"});
    EXPECT_THROW(class_successor(net, c, net.transition_index("t3")), ContractError);
}

TEST(TdisInvariants, PinnedPointSurvives)
{
    const Net net = fig1();
    auto c = class_successor(net, initial_tdis(net), net.transition_index("t4"), {}, true);
    for (auto t : seq(net, {"t1", "t2", "t5", "t6"}))
        c = class_successor(net, c, t);
    ASSERT_TRUE(c.ds.has_point(1));
    // pinned points never change the firing domain
    const auto plain = along(net, {"t4", "t1", "t2", "t5", "t6"});
    EXPECT_EQ(c.dc, plain.dc);
}

TEST(TdisRelabel, OrderPreserving)
{
    const Net net = fig1();
    const auto c = relabel_points(along(net, {"t4", "t1", "t2", "t5"}));
    EXPECT_EQ(c.ds.index(), (std::vector<PointId>{0, 1, 2}));
    EXPECT_EQ(c.ds.lo(net.transition_index("t3"), 2), Bound(-1));
    EXPECT_EQ(c.points.na_of(net.transition_index("t3")), 2);
}
