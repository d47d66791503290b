#include "itpn/errors.hpp"
#include "itpn/graph.hpp"
#include "itpn/model_io.hpp"
#include "itpn/quant.hpp"
#include "itpn/report.hpp"
#include "itpn/simulator.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

using namespace itpn;

namespace {

enum Exit { ok = 0, failure = 1, parse_failure = 2, bounded = 3, budget = 4 };

std::vector<TransitionId> parse_sequence(const Net& net, const std::string& text)
{
    std::vector<TransitionId> seq;
    std::stringstream ss(text);
    for (std::string name; std::getline(ss, name, ',');)
        if (!name.empty())
            seq.push_back(net.transition_index(name));
    return seq;
}

void write_to(const std::string& path, const std::string& text)
{
    if (path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream out(path);
    if (!out)
        throw std::runtime_error("cannot write " + path);
    out << text;
}

std::string bounds_text(const Rational& lo, const Bound& hi) { return "[" + to_string(lo) + ", " + hi.str() + "]"; }

struct Common {
    std::string model;
    std::string method = "tdis";
    std::string equiv = "equality";
    std::string identity = "approx";
    std::size_t max_classes = 100000;
    std::size_t max_depth = 0;
    bool parallel = false;
    std::size_t oracle_rows = OracleBudget{}.max_constraints;

    BuildOptions options() const
    {
        BuildOptions o;
        o.method = parse_method(method);
        o.equivalence = parse_equivalence(equiv);
        o.tdis_identity = parse_tdis_identity(identity);
        o.max_classes = max_classes;
        if (max_depth > 0)
            o.max_depth = max_depth;
        o.parallel = parallel;
        o.budget.max_constraints = oracle_rows;
        return o;
    }
};

void add_build_flags(CLI::App* cmd, Common& c, bool with_method)
{
    cmd->add_option("model", c.model, "model file (.itpn)")->required();
    if (with_method)
        cmd->add_option("--method", c.method, "exact | dbm | tdis")->check(CLI::IsMember({"exact", "dbm", "tdis"}));
    cmd->add_option("--equiv", c.equiv, "equality | inclusion")->check(CLI::IsMember({"equality", "inclusion"}));
    cmd->add_option("--tdis-identity", c.identity, "approx | points | strict")
        ->check(CLI::IsMember({"approx", "points", "strict"}));
    cmd->add_option("--max-classes", c.max_classes)->check(CLI::PositiveNumber);
    cmd->add_option("--max-depth", c.max_depth, "0 = unlimited");
    cmd->add_flag("--parallel", c.parallel, "expand BFS levels with OpenMP");
    cmd->add_option("--oracle-rows", c.oracle_rows, "constraint budget of the exact oracle")->check(CLI::PositiveNumber);
}

int run_build(const Common& c, const std::string& dot, const std::string& stats, bool full)
{
    const Net net = load_model(c.model);
    const auto g = explore(net, c.options());
    if (!dot.empty())
        write_to(dot, export_dot(net, g, full ? DotVerbosity::full : DotVerbosity::brief));
    const auto record = stats_json(g) + "\n";
    if (!stats.empty())
        write_to(stats, record);
    if (stats != "-")
        std::cout << record;
    return g.stats.truncated() ? bounded : ok;
}

int run_diff(const Common& c, const std::string& methods, std::size_t depth)
{
    const Net net = load_model(c.model);
    auto comma = methods.find(',');
    if (comma == std::string::npos)
        throw std::invalid_argument("--methods expects A,B");
    auto oa = c.options(), ob = c.options();
    oa.method = parse_method(methods.substr(0, comma));
    ob.method = parse_method(methods.substr(comma + 1));
    oa.max_depth = ob.max_depth = depth;
    const auto ga = explore(net, oa);
    const auto gb = explore(net, ob);
    if (ga.stats.truncated_classes || gb.stats.truncated_classes) {
        std::cerr << "class limit reached\n";
        return bounded;
    }
    const auto report = diff_graphs(ga, gb, depth);
    std::cout << "only in " << to_string(oa.method) << ": " << report.count_first << " sequences\n";
    for (const auto& s : report.only_first)
        std::cout << "  " << format_sequence(net, s) << '\n';
    std::cout << "only in " << to_string(ob.method) << ": " << report.count_second << " sequences\n";
    for (const auto& s : report.only_second)
        std::cout << "  " << format_sequence(net, s) << '\n';
    return ok;
}

int run_bounds(const Common& c, const std::string& path, std::size_t from, std::size_t start)
{
    const Net net = load_model(c.model);
    const auto opts = c.options();
    const auto g = build(net, opts);
    PathQuery q{start, parse_sequence(net, path), from};
    auto b = path_duration_bounds(net, g, q, opts);
    if (!b) {
        std::cout << "infeasible\n";
        return failure;
    }
    std::cout << bounds_text(b->bounds.lo, b->bounds.hi) << '\n';
    return ok;
}

int run_wcrt(const Common& c, const std::string& start, const std::string& end, const ResponseLimits& limits)
{
    const Net net = load_model(c.model);
    const auto opts = c.options();
    const auto g = build(net, opts);
    const auto r = response_time(net, g, {net.transition_index(start), net.transition_index(end)}, limits, opts);
    if (!r.found) {
        std::cout << "no path from " << start << " to " << end << '\n';
        return failure;
    }
    std::cout << "BCRT " << to_string(r.bcrt) << "\nWCRT " << r.wcrt << "\npaths " << r.paths << '\n';
    if (r.truncated) {
        std::cout << "truncated\n";
        return bounded;
    }
    return ok;
}

int run_simulate(const Common& c, std::size_t steps, std::uint64_t seed, const std::string& check)
{
    const Net net = load_model(c.model);
    const auto run = random_run(net, steps, seed);
    for (const auto& s : run.steps)
        std::cout << net.transition_name(s.transition) << " @" << to_string(s.delay) << '\n';
    if (run.deadlocked)
        std::cout << "deadlock after " << run.steps.size() << " steps\n";
    if (check.empty())
        return ok;
    auto opts = c.options();
    opts.method = parse_method(check);
    opts.max_depth = run.steps.size();
    const auto g = explore(net, opts);
    std::vector<TransitionId> seq;
    for (const auto& s : run.steps)
        seq.push_back(s.transition);
    if (follow(g, seq).empty()) {
        std::cout << "run is not a path of the " << check << " graph\n";
        return failure;
    }
    auto trace = TraceSystem::initial(net, opts.budget);
    for (const auto& s : run.steps) {
        trace = trace.fire_timed(net, s.transition, s.delay);
        if (!trace.is_consistent()) {
            std::cout << "run violates the exact class system\n";
            return failure;
        }
    }
    std::cout << "run replays in the " << check << " graph\n";
    return ok;
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"State-class graphs of time Petri nets with inhibitor arcs"};
    app.require_subcommand(1);

    Common common;
    std::string dot, stats;
    bool full = false;
    auto* build_cmd = app.add_subcommand("build", "build a state-class graph");
    add_build_flags(build_cmd, common, true);
    build_cmd->add_option("--dot", dot, "write the graph in DOT format ('-' = stdout)");
    build_cmd->add_option("--stats", stats, "write the statistics record ('-' = stdout)");
    build_cmd->add_flag("--full", full, "include class matrices in DOT labels");

    std::string methods = "exact,dbm";
    std::size_t depth = 6;
    auto* diff_cmd = app.add_subcommand("diff", "compare the firing sequences of two graphs");
    add_build_flags(diff_cmd, common, false);
    diff_cmd->add_option("--methods", methods, "A,B");
    diff_cmd->add_option("--depth", depth);

    std::string path;
    std::size_t from = 0, start_node = 0;
    auto* bounds_cmd = app.add_subcommand("bounds", "duration bounds of a firing sequence");
    add_build_flags(bounds_cmd, common, true);
    bounds_cmd->add_option("--path", path, "comma-separated transitions")->required();
    bounds_cmd->add_option("--from", from, "origin position on the path");
    bounds_cmd->add_option("--start-node", start_node, "graph node the path starts at");

    std::string task_start, task_end;
    ResponseLimits limits;
    auto* wcrt_cmd = app.add_subcommand("wcrt", "best and worst-case response time of a task");
    add_build_flags(wcrt_cmd, common, true);
    wcrt_cmd->add_option("--start", task_start)->required();
    wcrt_cmd->add_option("--end", task_end)->required();
    wcrt_cmd->add_option("--max-len", limits.max_len);
    wcrt_cmd->add_option("--max-paths", limits.max_paths);

    std::size_t steps = 20;
    std::uint64_t seed = 1;
    std::string check;
    auto* sim_cmd = app.add_subcommand("simulate", "random timed run");
    sim_cmd->add_option("model", common.model)->required();
    sim_cmd->add_option("--steps", steps);
    sim_cmd->add_option("--seed", seed);
    sim_cmd->add_option("--check-against", check)->check(CLI::IsMember({"exact", "dbm", "tdis"}));

    CLI11_PARSE(app, argc, argv);

    try {
        if (*build_cmd)
            return run_build(common, dot, stats, full);
        if (*diff_cmd)
            return run_diff(common, methods, depth);
        if (*bounds_cmd)
            return run_bounds(common, path, from, start_node);
        if (*wcrt_cmd)
            return run_wcrt(common, task_start, task_end, limits);
        if (*sim_cmd)
            return run_simulate(common, steps, seed, check);
    } catch (const ParseError& e) {
        std::cerr << "parse error: " << e.what() << '\n';
        return parse_failure;
    } catch (const BoundedError& e) {
        std::cerr << e.what() << '\n';
        return bounded;
    } catch (const BudgetError& e) {
        std::cerr << "oracle budget: " << e.what() << '\n';
        return budget;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return failure;
    }
    return failure;
}
