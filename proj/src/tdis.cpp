#include "itpn/tdis.hpp"

#include "itpn/errors.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace itpn {

std::size_t PointMaps::slot(TransitionId t) const
{
    auto it = std::lower_bound(enabled.begin(), enabled.end(), t);
    if (it == enabled.end() || *it != t)
        throw ContractError("transition " + std::to_string(t) + " is not enabled in the class");
    return static_cast<std::size_t>(it - enabled.begin());
}

DistanceSystem::DistanceSystem(std::vector<PointId> index, TransitionSet transitions)
    : index_(std::move(index)), transitions_(std::move(transitions))
{
    const auto cells = index_.size() * transitions_.size();
    up_t_.assign(cells, Bound::infinity());
    lo_t_.assign(cells, Bound::infinity());
    up_n_.assign(index_.size(), Bound::infinity());
    lo_n_.assign(index_.size(), Bound::infinity());
}

bool DistanceSystem::has_point(PointId i) const
{
    return std::binary_search(index_.begin(), index_.end(), i);
}

std::size_t DistanceSystem::row(PointId i) const
{
    auto it = std::lower_bound(index_.begin(), index_.end(), i);
    if (it == index_.end() || *it != i)
        throw ContractError("point " + std::to_string(i) + " is not tracked");
    return static_cast<std::size_t>(it - index_.begin());
}

std::size_t DistanceSystem::cell(PointId i, TransitionId t) const
{
    auto it = std::lower_bound(transitions_.begin(), transitions_.end(), t);
    if (it == transitions_.end() || *it != t)
        throw ContractError("transition " + std::to_string(t) + " has no distance column");
    return row(i) * transitions_.size() + static_cast<std::size_t>(it - transitions_.begin());
}

std::string DistanceSystem::str(const Net& net) const
{
    std::ostringstream os;
    auto header = [&](const char* title) {
        os << title;
        for (auto t : transitions_)
            os << ' ' << net.transition_name(t);
        os << '\n';
    };
    header("DS[i,t]");
    for (auto i : index_) {
        os << i << ':';
        for (auto t : transitions_)
            os << ' ' << up(i, t);
        os << '\n';
    }
    header("DS[t,i]");
    for (auto i : index_) {
        os << i << ':';
        for (auto t : transitions_)
            os << ' ' << lo(t, i);
        os << '\n';
    }
    os << "DS[i,n]";
    for (auto i : index_)
        os << ' ' << i << '=' << to_now(i);
    os << "\nDS[n,i]";
    for (auto i : index_)
        os << ' ' << i << '=' << from_now(i);
    os << '\n';
    return os.str();
}

namespace {

std::vector<PointId> referenced_points(const PointMaps& pm)
{
    std::set<PointId> s;
    for (std::size_t k = 0; k < pm.enabled.size(); ++k) {
        s.insert(pm.ne[k]);
        if (pm.ni[k] >= 0)
            s.insert(pm.ni[k]);
        if (pm.na[k] >= 0)
            s.insert(pm.na[k]);
    }
    return {s.begin(), s.end()};
}

std::vector<PointId> row_index(const std::vector<PointId>& points, const std::vector<PointId>& pinned, PointId n)
{
    std::set<PointId> s(points.begin(), points.end());
    s.insert(pinned.begin(), pinned.end());
    s.insert(n);
    return {s.begin(), s.end()};
}

/// Rebuilds dc's • row/column from DS[n,t] and DS[t,n].
void mirror_dot(TdisClass& c)
{
    for (auto t : c.dc.transitions()) {
        c.dc.at(DbmMatrix::dot, c.dc.pos(t)) = c.ds.up(c.depth, t);
        c.dc.at(c.dc.pos(t), DbmMatrix::dot) = c.ds.lo(t, c.depth);
    }
}

void record_creation(TdisClass& c)
{
    auto& row = c.hist.creation[c.depth];
    for (auto t : c.points.enabled)
        row[t] = {c.ds.up(c.depth, t), c.ds.lo(t, c.depth)};
}

void record_inhibition(TdisClass& c, TransitionId t)
{
    auto& [s, rows] = c.hist.inhibition[t];
    s = c.depth;
    rows.clear();
    for (auto i : c.ds.index())
        rows[i] = {c.ds.up(i, t), c.ds.lo(t, i)};
}

const DistancePair& creation_entry(const TdisClass& c, PointId i, TransitionId t)
{
    auto row = c.hist.creation.find(i);
    if (row == c.hist.creation.end())
        throw ContractError("missing creation snapshot for point " + std::to_string(i));
    auto e = row->second.find(t);
    if (e == row->second.end())
        throw ContractError("missing creation snapshot entry for point " + std::to_string(i));
    return e->second;
}

const DistancePair& inhibition_entry(const TdisClass& c, TransitionId t, PointId s, PointId i)
{
    auto it = c.hist.inhibition.find(t);
    if (it == c.hist.inhibition.end() || it->second.first != s)
        throw ContractError("missing inhibition snapshot at point " + std::to_string(s));
    auto e = it->second.second.find(i);
    if (e == it->second.second.end())
        throw ContractError("missing inhibition snapshot entry for point " + std::to_string(i));
    return e->second;
}

/// Drops snapshot data no longer reachable from the tracked points.
void collect_garbage(TdisClass& c)
{
    const auto& keep = c.ds.index();
    auto tracked = [&](PointId i) { return std::binary_search(keep.begin(), keep.end(), i); };
    for (auto it = c.hist.creation.begin(); it != c.hist.creation.end();) {
        if (!tracked(it->first)) {
            it = c.hist.creation.erase(it);
            continue;
        }
        for (auto e = it->second.begin(); e != it->second.end();)
            e = contains(c.points.enabled, e->first) ? std::next(e) : it->second.erase(e);
        ++it;
    }
    for (auto it = c.hist.inhibition.begin(); it != c.hist.inhibition.end();) {
        if (!contains(c.points.enabled, it->first) || c.points.ni_of(it->first) != it->second.first) {
            it = c.hist.inhibition.erase(it);
            continue;
        }
        auto& rows = it->second.second;
        for (auto e = rows.begin(); e != rows.end();)
            e = tracked(e->first) ? std::next(e) : rows.erase(e);
        ++it;
    }
}

Bound min0(const Bound& b) { return min(Bound(0), b); }

}  // namespace

TdisClass initial_tdis(const Net& net)
{
    TdisClass c;
    c.marking = net.initial_marking();
    c.depth = 0;
    const auto status = split_status(net, c.marking);
    auto& pm = c.points;
    pm.enabled = enabled_set(net, c.marking);
    for (auto t : pm.enabled) {
        const bool inhibited = contains(status.inhibited, t);
        pm.ne.push_back(0);
        pm.ni.push_back(inhibited ? 0 : -1);
        pm.na.push_back(inhibited ? -1 : 0);
    }
    pm.points = referenced_points(pm);
    c.ds = DistanceSystem(row_index(pm.points, c.pinned, 0), pm.enabled);
    c.ds.to_now(0) = 0;
    c.ds.from_now(0) = 0;
    for (auto t : pm.enabled) {
        c.ds.up(0, t) = net.tmax(t);
        c.ds.lo(t, 0) = Bound(-net.tmin(t));
    }
    c.dc = initial_dbm(net).d;
    mirror_dot(c);
    record_creation(c);
    for (auto t : status.inhibited)
        record_inhibition(c, t);
    collect_garbage(c);
    return c;
}

TdisClass pin_current_point(const TdisClass& c)
{
    TdisClass out = c;
    if (std::find(out.pinned.begin(), out.pinned.end(), c.depth) == out.pinned.end())
        out.pinned.push_back(c.depth);
    record_creation(out);
    return out;
}

TdisClass rebase(const Net& net, const TdisClass& c)
{
    TdisClass out;
    out.marking = c.marking;
    const auto status = split_status(net, out.marking);
    auto& pm = out.points;
    pm.enabled = c.points.enabled;
    for (auto t : pm.enabled) {
        const bool inhibited = contains(status.inhibited, t);
        pm.ne.push_back(0);
        pm.ni.push_back(inhibited ? 0 : -1);
        pm.na.push_back(inhibited ? -1 : 0);
    }
    pm.points = referenced_points(pm);
    out.ds = DistanceSystem({0}, pm.enabled);
    out.ds.to_now(0) = 0;
    out.ds.from_now(0) = 0;
    for (auto t : pm.enabled) {
        out.ds.up(0, t) = c.ds.up(c.depth, t);
        out.ds.lo(t, 0) = c.ds.lo(t, c.depth);
    }
    out.dc = c.dc;
    record_creation(out);
    for (auto t : status.inhibited)
        record_inhibition(out, t);
    return out;
}

std::map<PointId, Bound> lambda(const Net& net, const TdisClass& c)
{
    const auto activated = split_status(net, c.marking).activated;
    if (activated.empty())
        throw ContractError("dead class: no activated transition");
    std::map<PointId, Bound> out;
    for (auto i : c.ds.index()) {
        Bound v = Bound::infinity();
        for (auto t : activated)
            v = min(v, c.ds.up(i, t));
        out[i] = v;
    }
    return out;
}

bool firable_tdis(const Net& net, const TdisClass& c, TransitionId t)
{
    const auto activated = split_status(net, c.marking).activated;
    if (!contains(activated, t))
        return false;
    Bound b = Bound::infinity();
    for (auto u : activated)
        b = min(b, c.dc.diff(t, u));
    return b >= Bound(0);
}

TdisClass class_successor(const Net& net, const TdisClass& c, TransitionId t_f, const TdisOptions& opts,
                          bool pin_new_point)
{
    if (!firable_tdis(net, c, t_f))
        throw ContractError("class_successor: " + net.transition_name(t_f) + " is not firable");

    const PointId prev = c.depth;
    const PointId n = prev + 1;
    const auto status_prev = split_status(net, c.marking);
    const auto lam = lambda(net, c);
    const auto& P = c.ds;
    const auto& dcp = c.dc;

    // β_c^{n-1}[t] over Ta(M^{n-1})
    auto beta_c = [&](TransitionId t) {
        Bound b = Bound::infinity();
        for (auto u : status_prev.activated)
            b = min(b, dcp.diff(t, u));
        return b;
    };

    TdisClass next;
    next.marking = fire_marking(net, c.marking, t_f);
    next.depth = n;
    const auto fresh = newly_enabled(net, c.marking, t_f, next.marking);
    const auto status = split_status(net, next.marking);

    // Ne / Ni / Na
    auto& pm = next.points;
    pm.enabled = enabled_set(net, next.marking);
    for (auto t : pm.enabled) {
        if (contains(fresh, t)) {
            pm.ne.push_back(n);
            pm.ni.push_back(contains(status.inhibited, t) ? n : -1);
            pm.na.push_back(contains(status.activated, t) ? n : -1);
            continue;
        }
        const bool was_active = contains(status_prev.activated, t);
        const bool is_active = contains(status.activated, t);
        pm.ne.push_back(c.points.ne_of(t));
        pm.ni.push_back(was_active && !is_active ? n : c.points.ni_of(t));
        pm.na.push_back(!was_active && is_active ? n : c.points.na_of(t));
    }
    pm.points = referenced_points(pm);
    next.pinned.clear();
    for (auto i : c.pinned)
        next.pinned.push_back(i);
    if (pin_new_point)
        next.pinned.push_back(n);

    auto index = row_index(pm.points, next.pinned, n);
    next.ds = DistanceSystem(index, pm.enabled);
    auto& S = next.ds;
    const std::vector<PointId> older(index.begin(), index.end() - 1);

    S.to_now(n) = 0;
    S.from_now(n) = 0;
    for (auto i : older) {
        S.to_now(i) = lam.at(i);
        S.from_now(i) = P.lo(t_f, i);
    }

    for (auto t : pm.enabled) {
        if (contains(fresh, t)) {
            for (auto i : older) {
                S.up(i, t) = S.to_now(i) + net.tmax(t);
                S.lo(t, i) = S.from_now(i) - Bound(net.tmin(t));
            }
            S.up(n, t) = net.tmax(t);
            S.lo(t, n) = Bound(-net.tmin(t));
            continue;
        }

        const PointId r = pm.ne_of(t);
        if (!contains(status_prev.inhibited, t)) {
            const PointId s = c.points.ni_of(t);
            const PointId p = pm.na_of(t);
            const bool history = s >= 0 && p >= 0 && s <= p;
            for (auto i : older) {
                Bound up = P.up(i, t);
                if (opts.loose_upper_term)
                    up = min(up, S.to_now(i) + P.up(prev, t) + P.lo(t_f, prev));
                else
                    up = min(up, S.to_now(i) + dcp.diff(t_f, t));
                Bound lo = min(P.lo(t, i), S.from_now(i) + min0(P.lo(t, prev) + lam.at(prev)));
                if (history && i <= s) {
                    const auto& h = inhibition_entry(c, t, s, i);
                    up = min(up, h.first + lam.at(s) + S.from_now(p));
                    lo = min(lo, h.second + P.lo(t_f, s) + S.to_now(p));
                }
                if (history && s <= i && i <= p) {
                    const auto& h = creation_entry(c, i, t);
                    up = min(up, h.first + S.to_now(i) + S.from_now(p));
                    lo = min(lo, h.second + S.from_now(i) + S.to_now(p));
                }
                S.up(i, t) = up;
                S.lo(t, i) = lo;
            }
            S.up(n, t) = min(dcp.diff(t_f, t), S.up(r, t) + S.from_now(r));
            S.lo(t, n) = min(beta_c(t), min0(S.lo(t, r) + S.to_now(r)));
        } else {
            const PointId s = pm.ni_of(t);
            for (auto i : older) {
                Bound up = P.up(i, t) + lam.at(prev);
                Bound lo = P.lo(t, i) + P.lo(t_f, prev);
                if (i <= s) {
                    const auto& h = inhibition_entry(c, t, s, i);
                    up = min(up, h.first + S.to_now(s));
                    lo = min(lo, h.second + S.from_now(s));
                }
                if (s <= i) {
                    const auto& h = creation_entry(c, i, t);
                    up = min(up, h.first + S.to_now(i));
                    lo = min(lo, h.second + S.from_now(i));
                }
                S.up(i, t) = up;
                S.lo(t, i) = lo;
            }
            S.up(n, t) = min(min(S.up(r, t) + S.from_now(r), P.up(prev, t)), dcp.diff(t_f, t) + lam.at(prev));
            S.lo(t, n) = min(min(min0(S.lo(t, r) + S.to_now(r)), P.lo(t, prev)), P.lo(t_f, prev) + beta_c(t));
        }
    }

    // D_c
    next.dc = DbmMatrix(pm.enabled);
    auto alpha = [&](TransitionId t, TransitionId u) {
        Bound a = S.up(n, u) + S.lo(t, n);
        for (auto i : pm.points)
            a = min(a, S.up(i, u) + S.lo(t, i));
        return a;
    };
    const Bound dwell_f = P.lo(t_f, prev);
    const Bound& dwell = lam.at(prev);
    for (auto t : pm.enabled)
        for (auto u : pm.enabled) {
            if (t == u)
                continue;
            Bound v;
            if (contains(fresh, t) || contains(fresh, u)) {
                v = S.up(n, u) + S.lo(t, n);
                if (opts.alpha_on_new_pairs)
                    v = min(v, alpha(t, u));
            } else {
                const bool ti = contains(status_prev.inhibited, t);
                const bool ui = contains(status_prev.inhibited, u);
                v = dcp.diff(t, u);
                if (ti && !ui)
                    v = v + dwell_f;
                else if (!ti && ui)
                    v = v + dwell;
                v = min(v, alpha(t, u));
            }
            next.dc.at(next.dc.pos(t), next.dc.pos(u)) = v;
        }
    mirror_dot(next);

    // snapshots
    next.hist = c.hist;
    for (auto t : fresh) {
        for (auto& [i, row] : next.hist.creation)
            row.erase(t);
        next.hist.inhibition.erase(t);
    }
    record_creation(next);
    for (auto t : pm.enabled)
        if (pm.ni_of(t) == n)
            record_inhibition(next, t);
    collect_garbage(next);
    return next;
}

TdisClass relabel_points(const TdisClass& c)
{
    const auto& index = c.ds.index();
    std::map<PointId, PointId> rename;
    for (std::size_t k = 0; k < index.size(); ++k)
        rename[index[k]] = static_cast<PointId>(k);
    auto map = [&](PointId i) { return i < 0 ? i : rename.at(i); };

    TdisClass out;
    out.marking = c.marking;
    out.depth = map(c.depth);
    out.points.enabled = c.points.enabled;
    for (std::size_t k = 0; k < c.points.enabled.size(); ++k) {
        out.points.ne.push_back(map(c.points.ne[k]));
        out.points.ni.push_back(map(c.points.ni[k]));
        out.points.na.push_back(map(c.points.na[k]));
    }
    for (auto i : c.points.points)
        out.points.points.push_back(map(i));
    for (auto i : c.pinned)
        out.pinned.push_back(map(i));
    std::vector<PointId> idx;
    for (auto i : index)
        idx.push_back(map(i));
    out.ds = DistanceSystem(idx, c.ds.transitions());
    for (auto i : index) {
        out.ds.to_now(map(i)) = c.ds.to_now(i);
        out.ds.from_now(map(i)) = c.ds.from_now(i);
        for (auto t : c.ds.transitions()) {
            out.ds.up(map(i), t) = c.ds.up(i, t);
            out.ds.lo(t, map(i)) = c.ds.lo(t, i);
        }
    }
    for (const auto& [i, row] : c.hist.creation)
        out.hist.creation[map(i)] = row;
    for (const auto& [t, entry] : c.hist.inhibition) {
        auto& [s, rows] = out.hist.inhibition[t];
        s = map(entry.first);
        for (const auto& [i, v] : entry.second)
            rows[map(i)] = v;
    }
    out.dc = c.dc;
    return out;
}

}  // namespace itpn
