#include "support.hpp"

#include "itpn/dbm.hpp"
#include "itpn/exact.hpp"
#include "itpn/random_net.hpp"

#include <gtest/gtest.h>

using namespace itpn;
using namespace itpn::test;

namespace {

DbmClass along(const Net& net, std::initializer_list<const char*> names)
{
    auto c = initial_dbm(net);
    for (auto t : seq(net, names)) {
        EXPECT_TRUE(firable_dbm(net, c, t)) << net.transition_name(t);
        c = successor_dbm(net, c, t);
    }
    return c;
}

// lo ≤ t ≤ hi
void expect_range(const Net& net, const DbmMatrix& d, const char* t, int lo, int hi)
{
    const auto id = net.transition_index(t);
    EXPECT_EQ(d.upper(id), Bound(hi)) << t;
    EXPECT_EQ(d.neg_lower(id), Bound(-lo)) << t;
}

// lo ≤ y − x ≤ hi
void expect_gap(const Net& net, const DbmMatrix& d, const char* x, const char* y, int lo, int hi)
{
    const auto tx = net.transition_index(x), ty = net.transition_index(y);
    EXPECT_EQ(d.diff(tx, ty), Bound(hi)) << y << " - " << x;
    EXPECT_EQ(d.diff(ty, tx), Bound(-lo)) << y << " - " << x;
}

}  // namespace

TEST(InitialDbm, MatchesStaticIntervals)
{
    const Net net = fig1();
    const auto c = initial_dbm(net);
    ASSERT_EQ(c.d.transitions(), tset(net, {"t1", "t3", "t4"}));
    const std::vector<std::vector<int>> table = {
        {0, 3, 4, 2},
        {-3, 0, 1, -1},
        {-2, 1, 0, 0},
        {0, 3, 4, 0},
    };
    for (std::size_t r = 0; r < 4; ++r)
        for (std::size_t k = 0; k < 4; ++k)
            EXPECT_EQ(c.d.at(r, k), Bound(table[r][k])) << r << "," << k;
    EXPECT_EQ(c.d.diff(net.transition_index("t1"), net.transition_index("t4")), Bound(-1));
}

TEST(Beta, RowMinimaOverActivated)
{
    const Net net = fig1();
    const auto b = beta(net, initial_dbm(net));
    EXPECT_EQ(b[DbmMatrix::dot], Bound(2));
    EXPECT_EQ(b[1], Bound(-1));
}

TEST(Beta, SingleActivatedTransition)
{
    NetBuilder nb;
    auto p = nb.add_place("p", 1);
    auto t = nb.add_transition("t", 1, 4);
    nb.add_input(p, t);
    const Net net = nb.build();
    const auto c = initial_dbm(net);
    EXPECT_EQ(beta(net, c)[c.d.pos(t)], Bound(0));
}

TEST(SuccessorDbm, OverapproximatedSystems)
{
    const Net net = fig1();
    const auto d1 = along(net, {"t4", "t1"});
    expect_range(net, d1.d, "t5", 0, 0);
    expect_gap(net, d1.d, "t7", "t2", -8, -5);
    expect_range(net, d1.d, "t7", 7, 9);
    expect_range(net, d1.d, "t3", 0, 4);

    const auto d2 = successor_dbm(net, d1, net.transition_index("t2"));
    expect_range(net, d2.d, "t5", 0, 0);
    expect_gap(net, d2.d, "t7", "t5", -8, -7);
    expect_range(net, d2.d, "t7", 7, 8);
    expect_range(net, d2.d, "t3", 0, 4);

    const auto d3 = successor_dbm(net, d2, net.transition_index("t5"));
    ASSERT_EQ(d3.d.transitions(), tset(net, {"t3", "t6"}));
    expect_range(net, d3.d, "t6", 0, 0);
    expect_range(net, d3.d, "t3", 0, 4);
    EXPECT_TRUE(firable_dbm(net, d3, net.transition_index("t3")));
    EXPECT_TRUE(firable_dbm(net, d3, net.transition_index("t6")));
}

TEST(FirableDbm, TightenedSystemRejectsT3)
{
    const Net net = fig1();
    DbmClass c{marking(net, {"p3", "p6"}), DbmMatrix(tset(net, {"t3", "t6"}))};
    auto& d = c.d;
    const auto t3 = d.pos(net.transition_index("t3")), t6 = d.pos(net.transition_index("t6"));
    d.at(0, t3) = 4;
    d.at(t3, 0) = -1;
    d.at(0, t6) = 0;
    d.at(t6, 0) = 0;
    d.close();
    EXPECT_FALSE(firable_dbm(net, c, net.transition_index("t3")));
    EXPECT_TRUE(firable_dbm(net, c, net.transition_index("t6")));
}

TEST(FirableDbm, InhibitedNeverFires)
{
    const Net net = fig1();
    const auto c = along(net, {"t4"});
    EXPECT_FALSE(firable_dbm(net, c, net.transition_index("t3")));
}

TEST(SuccessorDbm, AllNewEqualsInitialRestriction)
{
    NetBuilder nb;
    auto p = nb.add_place("p", 1);
    auto q = nb.add_place("q", 0);
    auto a = nb.add_transition("a", 1, 2);
    auto b = nb.add_transition("b", 0, 3);
    auto c = nb.add_transition("c", 2, 5);
    nb.add_input(p, a);
    nb.add_output(a, q);
    nb.add_input(q, b);
    nb.add_input(q, c);
    const Net net = nb.build();
    const auto next = successor_dbm(net, initial_dbm(net), a);
    DbmMatrix expect(TransitionSet{b, c});
    expect.at(0, 1) = 3;
    expect.at(1, 0) = 0;
    expect.at(0, 2) = 5;
    expect.at(2, 0) = -2;
    expect.at(1, 2) = 5;
    expect.at(2, 1) = 1;
    EXPECT_EQ(next.d, expect);
}

TEST(SuccessorDbm, TpnMatricesAreClosedAndMatchOracle)
{
    RandomNetShape shape;
    shape.max_inhibitors = 0;
    for (std::uint64_t seed = 1; seed <= 40; ++seed) {
        const Net net = random_net(seed, shape);
        // depth-first to depth 8, with the exact class alongside
        struct Item {
            DbmClass d;
            ExactClass e;
            int depth;
        };
        std::vector<Item> stack{{initial_dbm(net), initial_exact(net), 0}};
        std::size_t visited = 0;
        while (!stack.empty() && visited < 3000) {
            auto item = std::move(stack.back());
            stack.pop_back();
            ++visited;
            ASSERT_TRUE(item.d.d.is_closed()) << "seed " << seed;
            auto closed = item.d.d;
            closed.close();
            EXPECT_EQ(closed, item.d.d);
            if (item.depth == 8)
                continue;
            for (auto t : enabled_set(net, item.d.marking)) {
                const bool fd = firable_dbm(net, item.d, t);
                ASSERT_EQ(fd, firable_exact(net, item.e, t)) << "seed " << seed;
                if (fd)
                    stack.push_back({successor_dbm(net, item.d, t), exact_successor(net, item.e, t), item.depth + 1});
            }
        }
    }
}

TEST(Observer, TracksElapsedTime)
{
    const Net net = fig1();
    const auto obs = static_cast<TransitionId>(net.transition_count());
    auto c = with_observer(initial_dbm(net), obs);
    for (auto t : seq(net, {"t4", "t1", "t2", "t5"}))
        c = successor_dbm(net, c, t);
    // elapsed time from the initial class: exactly 3
    EXPECT_EQ(c.d.at(c.d.pos(obs), DbmMatrix::dot), Bound(3));
    EXPECT_EQ(c.d.at(DbmMatrix::dot, c.d.pos(obs)), Bound(-3));
}
