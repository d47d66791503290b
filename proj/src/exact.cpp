#include "itpn/exact.hpp"

#include "itpn/errors.hpp"

#include <algorithm>

namespace itpn {

namespace {

VarTag tag(TransitionId t) { return static_cast<VarTag>(t); }

Bound sup_or_throw(const LinearSystem& s, const LinearForm& form)
{
    auto v = s.maximize(form);
    if (!v)
        throw ContractError("inconsistent class system");
    return *v;
}

/// Firing constraints, the t := t' + t_f shift, elimination of t_f and
/// disabled clocks, and static intervals for newly enabled transitions.
/// When keep_as is set, t_f's variable survives under that tag instead of
/// being eliminated.
LinearSystem advance_system(const Net& net, const Marking& m, LinearSystem sys, TransitionId t_f,
                            const Marking& next, const std::optional<VarTag>& keep_as)
{
    const auto status = split_status(net, m);
    for (TransitionId t : status.activated)
        if (t != t_f)
            sys.add_difference(tag(t), tag(t_f), Bound(0));

    const auto fresh = newly_enabled(net, m, t_f, next);
    const auto enabled_next = enabled_set(net, next);
    std::vector<VarTag> drop;
    for (TransitionId t : enabled_set(net, m)) {
        const bool persistent = contains(enabled_next, t) && !contains(fresh, t);
        if (t == t_f)
            continue;
        if (!persistent)
            drop.push_back(tag(t));
        else if (contains(status.activated, t))
            sys.shift(tag(t), tag(t_f));
    }
    if (keep_as)
        sys.rename(tag(t_f), *keep_as);
    else
        drop.push_back(tag(t_f));
    sys.eliminate_all(drop);

    for (TransitionId t : fresh) {
        sys.add_variable(tag(t));
        sys.add_upper(tag(t), net.tmax(t));
        sys.add_lower(tag(t), net.tmin(t));
    }
    return sys;
}

}  // namespace

DbmMatrix tightest_dbm(const LinearSystem& s, const TransitionSet& vars)
{
    DbmMatrix d(vars);
    for (std::size_t a = 0; a < vars.size(); ++a) {
        d.at(DbmMatrix::dot, a + 1) = sup_or_throw(s, {{tag(vars[a]), 1}});
        d.at(a + 1, DbmMatrix::dot) = sup_or_throw(s, {{tag(vars[a]), -1}});
        for (std::size_t b = 0; b < vars.size(); ++b)
            if (a != b)
                d.at(a + 1, b + 1) = sup_or_throw(s, {{tag(vars[b]), 1}, {tag(vars[a]), -1}});
    }
    return d;
}

ExactClass initial_exact(const Net& net, OracleBudget budget)
{
    ExactClass c;
    c.marking = net.initial_marking();
    auto ts = enabled_set(net, c.marking);
    std::vector<VarTag> vars(ts.begin(), ts.end());
    c.d = LinearSystem(vars, budget);
    for (TransitionId t : ts) {
        c.d.add_upper(tag(t), net.tmax(t));
        c.d.add_lower(tag(t), net.tmin(t));
    }
    c.tight = tightest_dbm(c.d, ts);
    return c;
}

bool firable_exact(const Net& net, const ExactClass& c, TransitionId t)
{
    const auto status = split_status(net, c.marking);
    if (!contains(status.activated, t))
        return false;
    LinearSystem s = c.d;
    for (TransitionId u : status.activated)
        if (u != t)
            s.add_difference(tag(u), tag(t), Bound(0));
    return s.is_consistent();
}

ExactClass exact_successor(const Net& net, const ExactClass& c, TransitionId t_f, OracleBudget)
{
    if (!firable_exact(net, c, t_f))
        throw ContractError("exact_successor: " + net.transition_name(t_f) + " is not firable");
    ExactClass next;
    next.marking = fire_marking(net, c.marking, t_f);
    next.d = advance_system(net, c.marking, c.d, t_f, next.marking, std::nullopt);
    auto ts = enabled_set(net, next.marking);
    next.d.reorder(std::vector<VarTag>(ts.begin(), ts.end()));
    next.d.simplify();
    next.tight = tightest_dbm(next.d, ts);
    return next;
}

bool exact_equal(const ExactClass& a, const ExactClass& b)
{
    if (a.marking != b.marking || a.tight != b.tight)
        return false;
    return a.d.entails_all(b.d) && b.d.entails_all(a.d);
}

bool exact_included(const ExactClass& a, const ExactClass& b)
{
    if (a.marking != b.marking || !a.tight.entrywise_le(b.tight))
        return false;
    return a.d.entails_all(b.d);
}

TraceSystem TraceSystem::initial(const Net& net, OracleBudget budget)
{
    return from_class(initial_exact(net, budget));
}

TraceSystem TraceSystem::from_class(const ExactClass& c)
{
    TraceSystem tr;
    tr.marking_ = c.marking;
    tr.sys_ = c.d;
    return tr;
}

TransitionSet TraceSystem::enabled() const
{
    TransitionSet out;
    for (auto v : sys_.variables())
        if (v < delay_tag(0))
            out.push_back(static_cast<TransitionId>(v));
    std::sort(out.begin(), out.end());
    return out;
}

bool TraceSystem::firable(const Net& net, TransitionId t) const
{
    const auto status = split_status(net, marking_);
    if (!contains(status.activated, t))
        return false;
    LinearSystem s = sys_;
    for (TransitionId u : status.activated)
        if (u != t)
            s.add_difference(tag(u), tag(t), Bound(0));
    return s.is_consistent();
}

TraceSystem TraceSystem::advance(const Net& net, TransitionId t_f, const std::optional<Rational>& delay) const
{
    if (!contains(split_status(net, marking_).activated, t_f))
        throw ContractError("trace: " + net.transition_name(t_f) + " is not activated");
    TraceSystem tr;
    tr.marking_ = fire_marking(net, marking_, t_f);
    tr.depth_ = depth_ + 1;
    tr.symbolic_ = symbolic_;
    const VarTag theta = delay_tag(tr.depth_);
    tr.sys_ = advance_system(net, marking_, sys_, t_f, tr.marking_, theta);
    if (delay) {
        tr.sys_.assign(theta, *delay);
        tr.symbolic_.push_back(false);
    } else {
        tr.symbolic_.push_back(true);
    }
    return tr;
}

TraceSystem TraceSystem::fire(const Net& net, TransitionId t_f) const { return advance(net, t_f, std::nullopt); }

TraceSystem TraceSystem::fire_timed(const Net& net, TransitionId t_f, const Rational& delay) const
{
    return advance(net, t_f, delay);
}

LinearForm TraceSystem::delays_since(std::size_t i, std::int64_t sign) const
{
    if (i > depth_)
        throw ContractError("point beyond the trace depth");
    LinearForm form;
    for (std::size_t k = i + 1; k <= depth_; ++k) {
        if (!symbolic_[k - 1])
            throw ContractError("delay " + std::to_string(k) + " was substituted");
        form.emplace_back(delay_tag(k), sign);
    }
    return form;
}

Bound TraceSystem::sup(const LinearForm& form) const
{
    if (form.empty())
        return Bound(0);
    auto v = sys_.maximize(form);
    if (!v)
        throw ContractError("inconsistent trace system");
    return *v;
}

Bound TraceSystem::point_to_now(std::size_t i) const { return sup(delays_since(i, 1)); }

Bound TraceSystem::now_to_point(std::size_t i) const { return sup(delays_since(i, -1)); }

Bound TraceSystem::point_to_transition(std::size_t i, TransitionId t) const
{
    auto form = delays_since(i, 1);
    form.emplace_back(tag(t), 1);
    return sup(form);
}

Bound TraceSystem::transition_to_point(TransitionId t, std::size_t i) const
{
    auto form = delays_since(i, -1);
    form.emplace_back(tag(t), -1);
    return sup(form);
}

}  // namespace itpn
