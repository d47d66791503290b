#include "itpn/net.hpp"

#include "itpn/errors.hpp"

#include <algorithm>

namespace itpn {

PlaceId Net::place_index(const std::string& name) const
{
    auto it = std::find(place_names_.begin(), place_names_.end(), name);
    if (it == place_names_.end())
        throw ContractError("unknown place '" + name + "'");
    return static_cast<PlaceId>(it - place_names_.begin());
}

TransitionId Net::transition_index(const std::string& name) const
{
    auto it = std::find(transition_names_.begin(), transition_names_.end(), name);
    if (it == transition_names_.end())
        throw ContractError("unknown transition '" + name + "'");
    return static_cast<TransitionId>(it - transition_names_.begin());
}

bool Net::has_place(const std::string& name) const
{
    return std::find(place_names_.begin(), place_names_.end(), name) != place_names_.end();
}

bool Net::has_transition(const std::string& name) const
{
    return std::find(transition_names_.begin(), transition_names_.end(), name) != transition_names_.end();
}

bool Net::has_inhibitor_arcs() const
{
    return std::any_of(inhib_.begin(), inhib_.end(), [](auto w) { return w != 0; });
}

PlaceId NetBuilder::add_place(const std::string& name, std::uint32_t tokens)
{
    if (std::find(places_.begin(), places_.end(), name) != places_.end())
        throw ContractError("duplicate place '" + name + "'");
    places_.push_back(name);
    tokens_.push_back(tokens);
    return places_.size() - 1;
}

TransitionId NetBuilder::add_transition(const std::string& name, const Rational& tmin, const Bound& tmax)
{
    if (std::find(transitions_.begin(), transitions_.end(), name) != transitions_.end())
        throw ContractError("duplicate transition '" + name + "'");
    if (tmin < 0)
        throw ContractError("negative tmin for '" + name + "'");
    if (tmax < Bound(tmin))
        throw ContractError("empty static interval for '" + name + "'");
    transitions_.push_back(name);
    intervals_.push_back({tmin, tmax});
    return transitions_.size() - 1;
}

void NetBuilder::add_input(PlaceId p, TransitionId t, std::uint32_t weight)
{
    inputs_.push_back({p, t, weight});
}

void NetBuilder::add_output(TransitionId t, PlaceId p, std::uint32_t weight)
{
    outputs_.push_back({p, t, weight});
}

void NetBuilder::add_inhibitor(PlaceId p, TransitionId t, std::uint32_t weight)
{
    inhibitors_.push_back({p, t, weight});
}

PlaceId NetBuilder::place(const std::string& name) const
{
    auto it = std::find(places_.begin(), places_.end(), name);
    if (it == places_.end())
        throw ContractError("unknown place '" + name + "'");
    return static_cast<PlaceId>(it - places_.begin());
}

TransitionId NetBuilder::transition(const std::string& name) const
{
    auto it = std::find(transitions_.begin(), transitions_.end(), name);
    if (it == transitions_.end())
        throw ContractError("unknown transition '" + name + "'");
    return static_cast<TransitionId>(it - transitions_.begin());
}

Net NetBuilder::build() const
{
    Net net;
    net.place_names_ = places_;
    net.transition_names_ = transitions_;
    net.intervals_ = intervals_;
    net.initial_.tokens = tokens_;
    const auto cells = places_.size() * transitions_.size();
    net.pre_.assign(cells, 0);
    net.post_.assign(cells, 0);
    net.inhib_.assign(cells, 0);
    auto fill = [&](std::vector<std::uint32_t>& dst, const std::vector<Arc>& arcs) {
        for (const auto& a : arcs) {
            if (a.place >= places_.size() || a.transition >= transitions_.size())
                throw ContractError("arc refers to an unknown node");
            dst[a.place * transitions_.size() + a.transition] += a.weight;
        }
    };
    fill(net.pre_, inputs_);
    fill(net.post_, outputs_);
    fill(net.inhib_, inhibitors_);
    return net;
}

bool is_enabled(const Net& net, const Marking& m, TransitionId t)
{
    for (PlaceId p = 0; p < net.place_count(); ++p)
        if (net.pre(p, t) > m[p])
            return false;
    return true;
}

bool is_inhibited(const Net& net, const Marking& m, TransitionId t)
{
    if (!is_enabled(net, m, t))
        return false;
    for (PlaceId p = 0; p < net.place_count(); ++p) {
        auto w = net.inhibitor(p, t);
        if (w != 0 && w <= m[p])
            return true;
    }
    return false;
}

TransitionSet enabled_set(const Net& net, const Marking& m)
{
    TransitionSet out;
    for (TransitionId t = 0; t < net.transition_count(); ++t)
        if (is_enabled(net, m, t))
            out.push_back(t);
    return out;
}

EnablingStatus split_status(const Net& net, const Marking& m)
{
    EnablingStatus s;
    for (TransitionId t : enabled_set(net, m)) {
        if (is_inhibited(net, m, t))
            s.inhibited.push_back(t);
        else
            s.activated.push_back(t);
    }
    return s;
}

bool conflicting(const Net& net, const Marking& m, TransitionId t1, TransitionId t2)
{
    if (t1 == t2 || !is_enabled(net, m, t1) || !is_enabled(net, m, t2))
        throw ContractError("conflicting() expects two distinct enabled transitions");
    for (PlaceId p = 0; p < net.place_count(); ++p)
        if (net.pre(p, t1) + net.pre(p, t2) > m[p])
            return true;
    return false;
}

Marking fire_marking(const Net& net, const Marking& m, TransitionId t)
{
    if (!is_enabled(net, m, t))
        throw ContractError("firing disabled transition " + net.transition_name(t));
    Marking next = m;
    for (PlaceId p = 0; p < net.place_count(); ++p)
        next.tokens[p] = m[p] - net.pre(p, t) + net.post(p, t);
    return next;
}

TransitionSet newly_enabled(const Net& net, const Marking& m, TransitionId t_f, const Marking& m_next)
{
    TransitionSet out;
    for (TransitionId t : enabled_set(net, m_next)) {
        if (t == t_f || !is_enabled(net, m, t) || conflicting(net, m, t, t_f))
            out.push_back(t);
    }
    return out;
}

bool contains(const TransitionSet& set, TransitionId t)
{
    return std::binary_search(set.begin(), set.end(), t);
}

std::string format_marking(const Net& net, const Marking& m)
{
    std::string out;
    for (PlaceId p = 0; p < net.place_count(); ++p) {
        if (m[p] == 0)
            continue;
        if (!out.empty())
            out += ',';
        out += net.place_name(p);
        if (m[p] != 1)
            out += '*' + std::to_string(m[p]);
    }
    return out.empty() ? std::string("{}") : out;
}

}  // namespace itpn
