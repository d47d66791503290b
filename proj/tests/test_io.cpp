#include "support.hpp"

#include "itpn/errors.hpp"
#include "itpn/graph.hpp"
#include "itpn/random_net.hpp"
#include "itpn/report.hpp"

#include <gtest/gtest.h>
#include <json.hpp>

#include <regex>

using namespace itpn;
using namespace itpn::test;

TEST(Parser, UnboundedInterval)
{
    const Net net = parse_model("place p 1\ntrans t [2,inf]\narc p -> t\n");
    EXPECT_EQ(net.tmin(0), 2);
    EXPECT_TRUE(net.tmax(0).is_infinite());
}

TEST(Parser, RationalBoundsAndWeights)
{
    const Net net = parse_model("place p 3  # three\ntrans t [1/2,2.75]\narc p -> t 2\narc t -> p\ninhibit p -o t 3\n");
    EXPECT_EQ(net.tmin(0), Rational(1, 2));
    EXPECT_EQ(net.tmax(0), Bound(Rational(11, 4)));
    EXPECT_EQ(net.pre(0, 0), 2u);
    EXPECT_EQ(net.post(0, 0), 1u);
    EXPECT_EQ(net.inhibitor(0, 0), 3u);
}

TEST(Parser, EmptyInterval)
{
    try {
        parse_model("place p\ntrans t [3,2]\n");
        FAIL();
    } catch (const ParseError& e) {
        EXPECT_EQ(e.line(), 2);
        EXPECT_NE(std::string(e.what()).find("empty static interval"), std::string::npos);
    }
}

TEST(Parser, PositionedErrors)
{
    auto line_of = [](const std::string& text) -> int {
        try {
            parse_model(text);
        } catch (const ParseError& e) {
            return e.line();
        }
        return 0;
    };
    EXPECT_EQ(line_of("place p\n\narc p -> u\n"), 3);
    EXPECT_EQ(line_of("place p\nplace p\n"), 2);
    EXPECT_EQ(line_of("trans t [1,2]\ntrans t [1,2]\n"), 2);
    EXPECT_EQ(line_of("place p\ntrans t [1 2]\n"), 2);
    EXPECT_EQ(line_of("frobnicate\n"), 1);
    EXPECT_EQ(line_of("place p\ntrans t [1,2]\ninhibit t -o p\n"), 3);
}

TEST(Parser, RoundTrip)
{
    const Net f = fig1();
    EXPECT_EQ(parse_model(print_model(f)), f);
    for (std::uint64_t seed = 1; seed <= 100; ++seed) {
        const Net net = random_net(seed);
        EXPECT_EQ(parse_model(print_model(net)), net) << seed;
    }
}

namespace {

// balanced braces and quotes, quoted node ids, one line per edge
void expect_valid_dot(const std::string& dot, std::size_t nodes, std::size_t edges)
{
    int depth = 0;
    bool quoted = false;
    for (std::size_t k = 0; k < dot.size(); ++k) {
        const char ch = dot[k];
        if (ch == '\\' && quoted) {
            ++k;
            continue;
        }
        if (ch == '"')
            quoted = !quoted;
        else if (!quoted && ch == '{')
            ++depth;
        else if (!quoted && ch == '}')
            --depth;
        ASSERT_GE(depth, 0);
    }
    EXPECT_FALSE(quoted);
    EXPECT_EQ(depth, 0);
    EXPECT_EQ(dot.rfind("digraph", 0), 0u);
    const std::regex node(R"(^\s*"n\d+" \[)"), edge(R"(^\s*"n\d+" -> "n\d+")");
    std::size_t n = 0, e = 0;
    std::istringstream in(dot);
    for (std::string line; std::getline(in, line);) {
        n += std::regex_search(line, node);
        e += std::regex_search(line, edge);
    }
    EXPECT_EQ(n, nodes);
    EXPECT_EQ(e, edges);
}

}  // namespace

TEST(Dot, Fig1TdisGraph)
{
    const Net net = fig1();
    const auto g = explore(net, {});
    expect_valid_dot(export_dot(net, g), 19, 25);
    expect_valid_dot(export_dot(net, g, DotVerbosity::full), 19, 25);
}

TEST(Dot, FullLabelShowsMatrixRow)
{
    const Net net = fig1();
    const auto g = explore(net, {});
    const auto node = follow(g, seq(net, {"t4", "t1", "t2", "t5"})).back();
    const auto& c = std::get<TdisClass>(g.nodes[node]);
    EXPECT_NE(matrix_rows(net, c.dc).find("t3: 0, -1"), std::string::npos);
    EXPECT_NE(export_dot(net, g, DotVerbosity::full).find("t3: 0, -1"), std::string::npos);
}

TEST(Dot, ValidOnRandomGraphs)
{
    for (std::uint64_t seed = 1; seed <= 30; ++seed) {
        const Net net = random_net(seed);
        for (auto m : {Method::exact, Method::dbm, Method::tdis}) {
            BuildOptions o;
            o.method = m;
            o.max_classes = 500;
            const auto g = explore(net, o);
            expect_valid_dot(export_dot(net, g, DotVerbosity::full), g.stats.classes, g.stats.edges);
        }
    }
}

TEST(Dot, DeadlockedRoot)
{
    const Net net = parse_model("place p\ntrans t [0,1]\narc p -> t\n");
    expect_valid_dot(export_dot(net, explore(net, {})), 1, 0);
}

TEST(Stats, RecordMatchesGraph)
{
    const Net net = fig1();
    const auto g = explore(net, {});
    auto j = nlohmann::json::parse(stats_json(g));
    EXPECT_EQ(j["method"], "tdis");
    EXPECT_EQ(j["classes"], 19);
    EXPECT_EQ(j["edges"], 25);
    EXPECT_EQ(j["equivalence"], "equality");
    EXPECT_EQ(j["truncated_classes"], false);
    EXPECT_EQ(j["truncated_depth"], false);
    EXPECT_TRUE(j["wall_ms"].is_number());

    auto g2 = explore(net, {});
    g2.stats.wall_ms = g.stats.wall_ms;
    EXPECT_EQ(stats_json(g2), stats_json(g));
}
