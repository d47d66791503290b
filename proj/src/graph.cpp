#include "itpn/graph.hpp"

#include "itpn/errors.hpp"

#include <omp.h>

#include <chrono>
#include <deque>
#include <exception>
#include <map>
#include <optional>
#include <unordered_map>

namespace itpn {

std::string to_string(Method m)
{
    switch (m) {
    case Method::exact: return "exact";
    case Method::dbm: return "dbm";
    case Method::tdis: return "tdis";
    }
    return "?";
}

std::string to_string(Equivalence e) { return e == Equivalence::equality ? "equality" : "inclusion"; }

std::string to_string(TdisIdentity i)
{
    switch (i) {
    case TdisIdentity::approx: return "approx";
    case TdisIdentity::points: return "points";
    case TdisIdentity::strict: return "strict";
    }
    return "?";
}

Method parse_method(const std::string& s)
{
    if (s == "exact") return Method::exact;
    if (s == "dbm") return Method::dbm;
    if (s == "tdis") return Method::tdis;
    throw std::invalid_argument("unknown method '" + s + "'");
}

Equivalence parse_equivalence(const std::string& s)
{
    if (s == "equality") return Equivalence::equality;
    if (s == "inclusion") return Equivalence::inclusion;
    throw std::invalid_argument("unknown equivalence '" + s + "'");
}

TdisIdentity parse_tdis_identity(const std::string& s)
{
    if (s == "approx") return TdisIdentity::approx;
    if (s == "points") return TdisIdentity::points;
    if (s == "strict") return TdisIdentity::strict;
    throw std::invalid_argument("unknown tdis identity '" + s + "'");
}

const Marking& StateClassGraph::marking(std::size_t node) const
{
    return std::visit([](const auto& c) -> const Marking& { return c.marking; }, nodes.at(node));
}

std::size_t StateClassGraph::successor(std::size_t node, TransitionId t) const
{
    for (auto e : out.at(node))
        if (edges[e].transition == t)
            return edges[e].target;
    return npos;
}

ClassPayload initial_class(const Net& net, const BuildOptions& opts)
{
    switch (opts.method) {
    case Method::exact: return initial_exact(net, opts.budget);
    case Method::dbm: return initial_dbm(net);
    case Method::tdis: return initial_tdis(net);
    }
    throw ContractError("unknown method");
}

bool firable(const Net& net, const ClassPayload& c, TransitionId t)
{
    if (const auto* e = std::get_if<ExactClass>(&c))
        return firable_exact(net, *e, t);
    if (const auto* d = std::get_if<DbmClass>(&c))
        return firable_dbm(net, *d, t);
    return firable_tdis(net, std::get<TdisClass>(c), t);
}

ClassPayload successor(const Net& net, const ClassPayload& c, TransitionId t, const BuildOptions& opts)
{
    if (const auto* e = std::get_if<ExactClass>(&c))
        return exact_successor(net, *e, t, opts.budget);
    if (const auto* d = std::get_if<DbmClass>(&c))
        return successor_dbm(net, *d, t);
    return class_successor(net, std::get<TdisClass>(c), t, opts.tdis);
}

namespace {

void hash_points(std::size_t& h, const TdisClass& c)
{
    for (std::size_t k = 0; k < c.points.enabled.size(); ++k) {
        hash_combine(h, static_cast<std::size_t>(c.points.ne[k] + 1));
        hash_combine(h, static_cast<std::size_t>(c.points.ni[k] + 1));
        hash_combine(h, static_cast<std::size_t>(c.points.na[k] + 1));
    }
    for (auto i : c.ds.index()) {
        hash_combine(h, hash_bound(c.ds.to_now(i)));
        hash_combine(h, hash_bound(c.ds.from_now(i)));
        for (auto t : c.ds.transitions()) {
            hash_combine(h, hash_bound(c.ds.up(i, t)));
            hash_combine(h, hash_bound(c.ds.lo(t, i)));
        }
    }
}

bool tdis_equal(const TdisClass& a, const TdisClass& b, TdisIdentity mode)
{
    if (a.marking != b.marking || a.dc != b.dc)
        return false;
    if (mode == TdisIdentity::approx)
        return true;
    auto ra = relabel_points(a), rb = relabel_points(b);
    if (ra.points != rb.points || ra.ds != rb.ds)
        return false;
    return mode == TdisIdentity::points || ra.hist == rb.hist;
}

}  // namespace

std::size_t class_hash(const ClassPayload& c, const BuildOptions& opts)
{
    std::size_t h = 0;
    std::visit([&](const auto& x) { h = hash_marking(x.marking); }, c);
    if (opts.equivalence == Equivalence::inclusion)
        return h;
    if (const auto* e = std::get_if<ExactClass>(&c)) {
        hash_combine(h, e->tight.hash());
    } else if (const auto* d = std::get_if<DbmClass>(&c)) {
        hash_combine(h, d->d.hash());
    } else {
        const auto& t = std::get<TdisClass>(c);
        hash_combine(h, t.dc.hash());
        if (opts.tdis_identity != TdisIdentity::approx)
            hash_points(h, relabel_points(t));
    }
    return h;
}

bool class_equal(const ClassPayload& a, const ClassPayload& b, const BuildOptions& opts)
{
    if (a.index() != b.index())
        return false;
    if (const auto* e = std::get_if<ExactClass>(&a))
        return exact_equal(*e, std::get<ExactClass>(b));
    if (const auto* d = std::get_if<DbmClass>(&a))
        return *d == std::get<DbmClass>(b);
    return tdis_equal(std::get<TdisClass>(a), std::get<TdisClass>(b), opts.tdis_identity);
}

bool class_included(const ClassPayload& a, const ClassPayload& b, const BuildOptions& opts)
{
    if (a.index() != b.index())
        return false;
    if (const auto* e = std::get_if<ExactClass>(&a))
        return exact_included(*e, std::get<ExactClass>(b));
    if (const auto* d = std::get_if<DbmClass>(&a)) {
        const auto& db = std::get<DbmClass>(b);
        return d->marking == db.marking && d->d.entrywise_le(db.d);
    }
    const auto& ta = std::get<TdisClass>(a);
    const auto& tb = std::get<TdisClass>(b);
    if (ta.marking != tb.marking || !ta.dc.entrywise_le(tb.dc))
        return false;
    (void)opts;
    return true;
}

namespace {

/// Visited-class table keyed by class_hash.
class VisitedTable {
public:
    VisitedTable(const StateClassGraph& g, const BuildOptions& opts) : g_(g), opts_(opts) {}

    std::optional<std::size_t> find(const ClassPayload& c, std::size_t h) const
    {
        auto it = buckets_.find(h);
        if (it == buckets_.end())
            return std::nullopt;
        for (auto node : it->second) {
            const bool hit = opts_.equivalence == Equivalence::equality ? class_equal(c, g_.nodes[node], opts_)
                                                                       : class_included(c, g_.nodes[node], opts_);
            if (hit)
                return node;
        }
        return std::nullopt;
    }

    void insert(std::size_t h, std::size_t node) { buckets_[h].push_back(node); }

private:
    const StateClassGraph& g_;
    const BuildOptions& opts_;
    std::unordered_map<std::size_t, std::vector<std::size_t>> buckets_;
};

struct Expansion {
    std::vector<std::pair<TransitionId, ClassPayload>> succ;
    bool has_firable = false;
    std::exception_ptr error;
};

Expansion expand(const Net& net, const ClassPayload& c, const BuildOptions& opts, bool compute)
{
    Expansion x;
    try {
        for (TransitionId t = 0; t < net.transition_count(); ++t) {
            if (!firable(net, c, t))
                continue;
            x.has_firable = true;
            if (!compute)
                break;
            x.succ.emplace_back(t, successor(net, c, t, opts));
        }
    } catch (...) {
        x.error = std::current_exception();
    }
    return x;
}

class Builder {
public:
    Builder(const Net& net, const BuildOptions& opts) : net_(net), opts_(opts), visited_(g_, opts)
    {
        g_.method = opts.method;
        g_.equivalence = opts.equivalence;
    }

    void add_root()
    {
        auto root = initial_class(net_, opts_);
        auto h = class_hash(root, opts_);
        add_node(std::move(root), h, 0);
    }

    /// Merges the successors of `source`; returns false once max_classes is hit.
    bool merge(std::size_t source, Expansion&& x, std::vector<std::size_t>* discovered)
    {
        if (x.error)
            std::rethrow_exception(x.error);
        const bool expandable = g_.depth[source] < opts_.max_depth;
        if (!expandable) {
            if (x.has_firable)
                g_.stats.truncated_depth = true;
            return true;
        }
        for (auto& [t, c] : x.succ) {
            auto h = class_hash(c, opts_);
            auto hit = visited_.find(c, h);
            std::size_t target;
            if (hit) {
                target = *hit;
            } else {
                if (g_.nodes.size() >= opts_.max_classes) {
                    g_.stats.truncated_classes = true;
                    return false;
                }
                target = add_node(std::move(c), h, g_.depth[source] + 1);
                if (discovered)
                    discovered->push_back(target);
            }
            g_.out[source].push_back(g_.edges.size());
            g_.edges.push_back({source, t, target});
        }
        return true;
    }

    bool expandable(std::size_t node) const { return g_.depth[node] < opts_.max_depth; }

    StateClassGraph finish(std::chrono::steady_clock::time_point start)
    {
        g_.stats.classes = g_.nodes.size();
        g_.stats.edges = g_.edges.size();
        g_.stats.wall_ms =
            std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
        return std::move(g_);
    }

    const StateClassGraph& graph() const { return g_; }

private:
    std::size_t add_node(ClassPayload c, std::size_t h, std::size_t depth)
    {
        g_.nodes.push_back(std::move(c));
        g_.depth.push_back(depth);
        g_.out.emplace_back();
        visited_.insert(h, g_.nodes.size() - 1);
        return g_.nodes.size() - 1;
    }

    const Net& net_;
    const BuildOptions& opts_;
    StateClassGraph g_;
    VisitedTable visited_;
};

}  // namespace

StateClassGraph explore_serial(const Net& net, const BuildOptions& opts)
{
    const auto start = std::chrono::steady_clock::now();
    Builder b(net, opts);
    b.add_root();
    std::deque<std::size_t> queue{0};
    while (!queue.empty()) {
        const auto node = queue.front();
        queue.pop_front();
        auto x = expand(net, b.graph().nodes[node], opts, b.expandable(node));
        std::vector<std::size_t> found;
        const bool more = b.merge(node, std::move(x), &found);
        queue.insert(queue.end(), found.begin(), found.end());
        if (!more)
            break;
    }
    return b.finish(start);
}

StateClassGraph explore(const Net& net, const BuildOptions& opts)
{
    if (!opts.parallel)
        return explore_serial(net, opts);

    const auto start = std::chrono::steady_clock::now();
    Builder b(net, opts);
    b.add_root();
    std::vector<std::size_t> frontier{0};
    bool more = true;
    while (more && !frontier.empty()) {
        std::vector<Expansion> results(frontier.size());
        const auto& g = b.graph();
        const long count = static_cast<long>(frontier.size());
#pragma omp parallel for schedule(dynamic, 1)
        for (long k = 0; k < count; ++k) {
            const auto node = frontier[static_cast<std::size_t>(k)];
            results[static_cast<std::size_t>(k)] = expand(net, g.nodes[node], opts, b.expandable(node));
        }
        std::vector<std::size_t> next;
        for (std::size_t k = 0; k < frontier.size() && more; ++k)
            more = b.merge(frontier[k], std::move(results[k]), &next);
        frontier = std::move(next);
    }
    return b.finish(start);
}

StateClassGraph build(const Net& net, const BuildOptions& opts)
{
    auto g = explore(net, opts);
    if (g.stats.truncated_classes)
        throw BoundedError("class limit of " + std::to_string(opts.max_classes) + " reached", std::move(g));
    if (g.stats.truncated_depth)
        throw BoundedError("depth limit of " + std::to_string(opts.max_depth) + " reached", std::move(g));
    return g;
}

std::vector<std::size_t> follow(const StateClassGraph& g, const std::vector<TransitionId>& seq)
{
    std::vector<std::size_t> path{g.root()};
    for (auto t : seq) {
        auto next = g.successor(path.back(), t);
        if (next == StateClassGraph::npos)
            return {};
        path.push_back(next);
    }
    return path;
}

namespace {

std::uint64_t sat_add(std::uint64_t a, std::uint64_t b)
{
    std::uint64_t r;
    return __builtin_add_overflow(a, b, &r) ? std::numeric_limits<std::uint64_t>::max() : r;
}

std::uint64_t sat_mul(std::uint64_t a, std::uint64_t b)
{
    std::uint64_t r;
    return __builtin_mul_overflow(a, b, &r) ? std::numeric_limits<std::uint64_t>::max() : r;
}

/// Sequences of length ≤ remaining starting at node (the empty one included).
class PathCounter {
public:
    explicit PathCounter(const StateClassGraph& g) : g_(g) {}

    std::uint64_t operator()(std::size_t node, std::size_t remaining)
    {
        auto key = std::make_pair(node, remaining);
        if (auto it = memo_.find(key); it != memo_.end())
            return it->second;
        std::uint64_t n = 1;
        if (remaining > 0)
            for (auto e : g_.out[node])
                n = sat_add(n, (*this)(g_.edges[e].target, remaining - 1));
        memo_[key] = n;
        return n;
    }

private:
    const StateClassGraph& g_;
    std::map<std::pair<std::size_t, std::size_t>, std::uint64_t> memo_;
};

}  // namespace

std::uint64_t count_sequences(const StateClassGraph& g, std::size_t depth)
{
    return PathCounter(g)(g.root(), depth);
}

DiffReport diff_graphs(const StateClassGraph& g1, const StateClassGraph& g2, std::size_t depth,
                       std::size_t max_examples)
{
    DiffReport report;
    PathCounter count1(g1), count2(g2);
    struct Entry {
        std::uint64_t paths;
        std::vector<TransitionId> witness;
    };
    std::map<std::pair<std::size_t, std::size_t>, Entry> level{{{g1.root(), g2.root()}, {1, {}}}};
    for (std::size_t d = 0; d < depth && !level.empty(); ++d) {
        std::map<std::pair<std::size_t, std::size_t>, Entry> next;
        for (const auto& [pair, entry] : level) {
            const auto [a, b] = pair;
            for (auto e : g1.out[a]) {
                const auto t = g1.edges[e].transition;
                auto bt = g2.successor(b, t);
                if (bt == StateClassGraph::npos) {
                    report.count_first =
                        sat_add(report.count_first, sat_mul(entry.paths, count1(g1.edges[e].target, depth - d - 1)));
                    if (report.only_first.size() < max_examples) {
                        report.only_first.push_back(entry.witness);
                        report.only_first.back().push_back(t);
                    }
                    continue;
                }
                auto [it, fresh] = next.try_emplace({g1.edges[e].target, bt}, Entry{0, entry.witness});
                if (fresh)
                    it->second.witness.push_back(t);
                it->second.paths = sat_add(it->second.paths, entry.paths);
            }
            for (auto e : g2.out[b]) {
                const auto t = g2.edges[e].transition;
                if (g1.successor(a, t) != StateClassGraph::npos)
                    continue;
                report.count_second =
                    sat_add(report.count_second, sat_mul(entry.paths, count2(g2.edges[e].target, depth - d - 1)));
                if (report.only_second.size() < max_examples) {
                    report.only_second.push_back(entry.witness);
                    report.only_second.back().push_back(t);
                }
            }
        }
        level = std::move(next);
    }
    return report;
}

}  // namespace itpn
