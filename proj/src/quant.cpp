#include "itpn/quant.hpp"

#include "itpn/errors.hpp"

#include <functional>
#include <stdexcept>

namespace itpn {

namespace {

/// Walks one path for one method, measuring from a marked origin.
class Walker {
public:
    Walker(const Net& net, const StateClassGraph& g, std::size_t node, const BuildOptions& opts)
        : net_(net), opts_(opts), method_(g.method)
    {
        const auto& c = g.nodes.at(node);
        switch (method_) {
        case Method::tdis: {
            const auto& t = std::get<TdisClass>(c);
            tdis_ = node == g.root() ? t : rebase(net, t);
            break;
        }
        case Method::dbm: dbm_ = std::get<DbmClass>(c); break;
        case Method::exact: trace_ = TraceSystem::from_class(std::get<ExactClass>(c)); break;
        }
    }

    void mark_origin(bool pin)
    {
        origin_depth_ = steps_;
        switch (method_) {
        case Method::tdis:
            origin_ = tdis_.depth;
            if (pin)
                tdis_ = pin_current_point(tdis_);
            break;
        case Method::dbm: dbm_ = with_observer(dbm_, observer()); break;
        case Method::exact: origin_ = static_cast<PointId>(trace_.depth()); break;
        }
        marked_ = true;
    }

    /// False when the re-run cannot fire t.
    bool fire(TransitionId t, bool pin_new = false)
    {
        switch (method_) {
        case Method::tdis:
            if (!firable_tdis(net_, tdis_, t))
                return false;
            tdis_ = class_successor(net_, tdis_, t, opts_.tdis, pin_new);
            break;
        case Method::dbm:
            if (!firable_dbm(net_, dbm_, t))
                return false;
            dbm_ = successor_dbm(net_, dbm_, t);
            break;
        case Method::exact:
            if (!trace_.firable(net_, t))
                return false;
            trace_ = trace_.fire(net_, t);
            break;
        }
        ++steps_;
        return true;
    }

    /// nullopt when the origin is no longer tracked.
    std::optional<DurationBounds> bounds() const
    {
        if (!marked_)
            throw ContractError("origin not marked");
        switch (method_) {
        case Method::tdis:
            if (!tdis_.ds.has_point(origin_))
                return std::nullopt;
            return DurationBounds{(-tdis_.ds.from_now(origin_)).value(), tdis_.ds.to_now(origin_)};
        case Method::dbm: {
            const auto o = observer();
            return DurationBounds{(-dbm_.d.upper(o)).value(), dbm_.d.neg_lower(o)};
        }
        case Method::exact: {
            const auto i = static_cast<std::size_t>(origin_);
            return DurationBounds{(-trace_.now_to_point(i)).value(), trace_.point_to_now(i)};
        }
        }
        return std::nullopt;
    }

    std::size_t steps() const { return steps_; }

private:
    TransitionId observer() const { return net_.transition_count(); }

    const Net& net_;
    const BuildOptions& opts_;
    Method method_;
    TdisClass tdis_;
    DbmClass dbm_;
    TraceSystem trace_;
    PointId origin_ = 0;
    std::size_t origin_depth_ = 0;
    std::size_t steps_ = 0;
    bool marked_ = false;
};

std::optional<DurationBounds> run_query(const Net& net, const StateClassGraph& g, const PathQuery& q,
                                        const BuildOptions& opts, bool pin)
{
    Walker w(net, g, q.start_node, opts);
    if (q.origin == 0)
        w.mark_origin(pin);
    for (std::size_t k = 0; k < q.transitions.size(); ++k) {
        const bool at_origin = k + 1 == q.origin;
        if (!w.fire(q.transitions[k], pin && at_origin))
            return std::nullopt;
        if (at_origin)
            w.mark_origin(false);
    }
    return w.bounds();
}

}  // namespace

std::optional<PathBounds> path_duration_bounds(const Net& net, const StateClassGraph& g, const PathQuery& q,
                                               const BuildOptions& opts)
{
    if (q.start_node >= g.nodes.size())
        throw std::invalid_argument("start node out of range");
    if (q.origin > q.transitions.size())
        throw std::invalid_argument("origin lies beyond the end of the path");
    auto node = q.start_node;
    for (auto t : q.transitions) {
        node = g.successor(node, t);
        if (node == StateClassGraph::npos)
            throw std::invalid_argument("path is not a sequence of graph edges");
    }

    if (!q.force_extension) {
        Walker probe(net, g, q.start_node, opts);
        bool ok = true;
        if (q.origin == 0)
            probe.mark_origin(false);
        for (std::size_t k = 0; k < q.transitions.size() && ok; ++k) {
            ok = probe.fire(q.transitions[k]);
            if (ok && k + 1 == q.origin)
                probe.mark_origin(false);
        }
        if (!ok)
            return std::nullopt;
        if (auto b = probe.bounds())
            return PathBounds{*b, false};
    }
    auto b = run_query(net, g, q, opts, true);
    if (!b)
        return std::nullopt;
    return PathBounds{*b, true};
}

ResponseTime response_time(const Net& net, const StateClassGraph& g, const TaskSpec& task,
                           const ResponseLimits& limits, const BuildOptions& opts)
{
    ResponseTime rt;
    std::size_t work = 0;
    const std::size_t work_limit = limits.max_paths * std::max<std::size_t>(limits.max_len, 1);
    std::vector<bool> used(g.edges.size(), false);

    std::function<void(std::size_t, const Walker&)> dfs = [&](std::size_t node, const Walker& w) {
        if (rt.truncated)
            return;
        for (auto e : g.out[node]) {
            const auto& edge = g.edges[e];
            // the closing end edge may repeat the start edge
            if (used[e] && edge.transition != task.end)
                continue;
            if (rt.paths + rt.infeasible_paths >= limits.max_paths || ++work > work_limit) {
                rt.truncated = true;
                return;
            }
            Walker next = w;
            if (!next.fire(edge.transition)) {
                ++rt.infeasible_paths;
                continue;
            }
            if (edge.transition == task.end) {
                auto b = next.bounds();
                if (!b)
                    throw ContractError("response-time origin lost");
                if (!rt.found) {
                    rt.bcrt = b->lo;
                    rt.wcrt = b->hi;
                } else {
                    rt.bcrt = std::min(rt.bcrt, b->lo);
                    rt.wcrt = max(rt.wcrt, b->hi);
                }
                rt.found = true;
                ++rt.paths;
                continue;
            }
            if (next.steps() >= limits.max_len) {
                rt.truncated = true;
                return;
            }
            used[e] = true;
            dfs(edge.target, next);
            used[e] = false;
            if (rt.truncated)
                return;
        }
    };

    for (std::size_t e = 0; e < g.edges.size() && !rt.truncated; ++e) {
        const auto& edge = g.edges[e];
        if (edge.transition != task.start)
            continue;
        Walker w(net, g, edge.source, opts);
        if (!w.fire(edge.transition)) {
            ++rt.infeasible_paths;
            continue;
        }
        w.mark_origin(true);
        used[e] = true;
        dfs(edge.target, w);
        used[e] = false;
    }
    if (rt.truncated)
        rt.wcrt = Bound::infinity();
    return rt;
}

}  // namespace itpn
