#include "support.hpp"

#include "itpn/errors.hpp"
#include "itpn/exact.hpp"

#include <gtest/gtest.h>

using namespace itpn;
using namespace itpn::test;

namespace {

ExactClass along(const Net& net, std::initializer_list<const char*> names)
{
    auto c = initial_exact(net);
    for (auto t : seq(net, names)) {
        EXPECT_TRUE(firable_exact(net, c, t)) << net.transition_name(t);
        c = exact_successor(net, c, t);
    }
    return c;
}

Bound sup(const Net& net, const ExactClass& c, std::initializer_list<std::pair<const char*, int>> form)
{
    LinearForm f;
    for (auto [name, k] : form)
        f.emplace_back(net.transition_index(name), k);
    return *c.d.maximize(f);
}

}  // namespace

TEST(FourierMotzkin, SinglePair)
{
    LinearSystem s({0, 1});
    s.add_upper(1, 3);
    s.add_row({1, -1}, 2);
    s.eliminate(1);
    ASSERT_EQ(s.variables(), std::vector<VarTag>{0});
    ASSERT_EQ(s.constraints().size(), 1u);
    EXPECT_EQ(s.constraints()[0], (Constraint{{1}, 5}));
}

TEST(FourierMotzkin, DropsOneSidedRows)
{
    LinearSystem s({0, 1});
    s.add_row({1, 1}, 1);
    s.add_lower(1, 0);
    s.eliminate(1);
    ASSERT_EQ(s.constraints().size(), 1u);
    EXPECT_EQ(s.constraints()[0], (Constraint{{1}, 1}));
}

TEST(FourierMotzkin, ChernikovKeepsProjection)
{
    // x+y+z ≤ 3, x,y,z ≥ 0, y − z ≤ 1 eliminated to x alone
    LinearSystem s({0, 1, 2});
    s.add_row({1, 1, 1}, 3);
    for (VarTag v : {0, 1, 2})
        s.add_lower(v, 0);
    s.add_row({0, 1, -1}, 1);
    s.eliminate_all({1, 2});
    EXPECT_EQ(*s.maximize({{0, 1}}), Bound(3));
    EXPECT_EQ(*s.maximize({{0, -1}}), Bound(0));
}

TEST(FourierMotzkin, BudgetOverflowThrows)
{
    OracleBudget tiny{4, 24};
    LinearSystem s({0, 1, 2}, tiny);
    EXPECT_THROW(
        {
            for (int k = 1; k <= 3; ++k) {
                s.add_row({k, 1, 0}, k);
                s.add_row({-k, 0, 1}, k);
            }
            s.eliminate(0);
        },
        BudgetError);
}

TEST(Consistency, Basics)
{
    EXPECT_TRUE(LinearSystem({0}).is_consistent());
    LinearSystem s({0});
    s.add_upper(0, 0);
    s.add_lower(0, 1);
    EXPECT_FALSE(s.is_consistent());
}

TEST(ExactClass, PolyhedralPairAfterT4T1)
{
    const Net net = fig1();
    const auto c = along(net, {"t4", "t1"});
    EXPECT_EQ(sup(net, c, {{"t7", 1}, {"t3", 1}}), Bound(11));
    EXPECT_EQ(sup(net, c, {{"t7", -1}, {"t3", -1}}), Bound(-9));
    EXPECT_EQ(sup(net, c, {{"t5", 1}}), Bound(0));
    EXPECT_EQ(sup(net, c, {{"t5", -1}}), Bound(0));
    EXPECT_EQ(sup(net, c, {{"t2", 1}, {"t7", -1}}), Bound(-5));
    EXPECT_EQ(sup(net, c, {{"t2", -1}, {"t7", 1}}), Bound(8));
    EXPECT_EQ(sup(net, c, {{"t7", 1}}), Bound(9));
    EXPECT_EQ(sup(net, c, {{"t7", -1}}), Bound(-7));
    // the pair is not implied by the DBM bounds alone
    EXPECT_EQ(c.tight.upper(net.transition_index("t3")), Bound(4));
}

TEST(ExactClass, AfterT2)
{
    const Net net = fig1();
    const auto c = along(net, {"t4", "t1", "t2"});
    EXPECT_EQ(c.d.variables().size(), 3u);
    EXPECT_EQ(sup(net, c, {{"t7", 1}}), Bound(8));
    EXPECT_EQ(sup(net, c, {{"t7", -1}}), Bound(-7));
    EXPECT_EQ(sup(net, c, {{"t7", 1}, {"t3", 1}}), Bound(11));
    EXPECT_EQ(sup(net, c, {{"t7", -1}, {"t3", -1}}), Bound(-9));
    // tightest DBM: 1 ≤ t3 ≤ 4
    const auto t3 = net.transition_index("t3");
    EXPECT_EQ(c.tight.upper(t3), Bound(4));
    EXPECT_EQ(c.tight.neg_lower(t3), Bound(-1));
}

TEST(ExactClass, OnlyT6FirableAfterT5)
{
    const Net net = fig1();
    const auto c = along(net, {"t4", "t1", "t2", "t5"});
    const auto t3 = net.transition_index("t3"), t6 = net.transition_index("t6");
    ASSERT_EQ(c.tight.transitions(), (TransitionSet{t3, t6}));
    EXPECT_EQ(c.tight.upper(t3), Bound(4));
    EXPECT_EQ(c.tight.neg_lower(t3), Bound(-1));
    EXPECT_EQ(c.tight.upper(t6), Bound(0));
    EXPECT_TRUE(firable_exact(net, c, t6));
    EXPECT_FALSE(firable_exact(net, c, t3));

    auto with_order = c.d;
    with_order.add_difference(t6, t3, 0);  // t3 ≤ t6
    EXPECT_FALSE(with_order.is_consistent());
}

TEST(TightestDbm, DbmSystemIsFixedPoint)
{
    const Net net = fig1();
    const auto c = along(net, {"t4", "t1", "t2", "t5"});
    const auto again = tightest_dbm(c.d, c.tight.transitions());
    EXPECT_EQ(again, c.tight);
    EXPECT_TRUE(c.tight.is_closed());
}

TEST(ExactEquality, SameSolutionsDifferentRows)
{
    LinearSystem a({0, 1}), b({0, 1});
    a.add_upper(0, 2);
    a.add_upper(1, 2);
    a.add_lower(0, 0);
    a.add_lower(1, 0);
    b = a;
    b.add_row({1, 1}, 4);  // redundant
    const Marking m{{1}};
    ExactClass ca{m, a, tightest_dbm(a, {0, 1})}, cb{m, b, tightest_dbm(b, {0, 1})};
    EXPECT_TRUE(exact_equal(ca, cb));
    cb.d.add_row({1, 1}, 3);
    cb.tight = tightest_dbm(cb.d, {0, 1});
    EXPECT_FALSE(exact_equal(ca, cb));
    EXPECT_TRUE(exact_included(cb, ca));
    EXPECT_FALSE(exact_included(ca, cb));
}

TEST(TraceSystem, DelaysAlongThePath)
{
    const Net net = fig1();
    auto tr = TraceSystem::initial(net);
    for (auto t : seq(net, {"t4", "t1", "t2", "t5"})) {
        ASSERT_TRUE(tr.firable(net, t));
        tr = tr.fire(net, t);
    }
    EXPECT_EQ(tr.depth(), 4u);
    EXPECT_EQ(tr.point_to_now(0), Bound(3));
    EXPECT_EQ(tr.now_to_point(0), Bound(-3));
    EXPECT_EQ(tr.point_to_now(1), Bound(3));
    EXPECT_EQ(tr.now_to_point(1), Bound(-2));
    const auto t3 = net.transition_index("t3");
    EXPECT_EQ(tr.point_to_transition(0, t3), Bound(7));
    EXPECT_EQ(tr.transition_to_point(t3, 0), Bound(-4));
    EXPECT_FALSE(tr.firable(net, t3));
}

TEST(TraceSystem, TimedFiringSubstitutesDelay)
{
    const Net net = fig1();
    auto tr = TraceSystem::initial(net);
    tr = tr.fire_timed(net, net.transition_index("t4"), 1);
    EXPECT_TRUE(tr.is_consistent());
    EXPECT_THROW(tr.point_to_now(0), ContractError);  // θ_1 is a constant now
    EXPECT_TRUE(tr.fire_timed(net, net.transition_index("t1"), 2).is_consistent());
    auto late = tr.fire_timed(net, net.transition_index("t1"), 3);  // t1 is due at 2
    EXPECT_FALSE(late.is_consistent());
}
