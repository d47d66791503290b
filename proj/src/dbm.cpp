#include "itpn/dbm.hpp"

#include "itpn/errors.hpp"

#include <algorithm>
#include <functional>
#include <sstream>

namespace itpn {

void hash_combine(std::size_t& seed, std::size_t value)
{
    seed ^= value + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2);
}

std::size_t hash_bound(const Bound& b)
{
    if (b.is_infinite())
        return 0x7f4a7c15u;
    const auto& q = b.value();
    std::size_t h = std::hash<long>{}(mpz_get_si(q.get_num_mpz_t()));
    hash_combine(h, std::hash<long>{}(mpz_get_si(q.get_den_mpz_t())));
    return h;
}

std::size_t hash_marking(const Marking& m)
{
    std::size_t h = m.size();
    for (auto v : m.tokens)
        hash_combine(h, v);
    return h;
}

DbmMatrix::DbmMatrix(TransitionSet transitions) : transitions_(std::move(transitions))
{
    cells_.assign(dim() * dim(), Bound::infinity());
    for (std::size_t k = 0; k < dim(); ++k)
        at(k, k) = 0;
}

bool DbmMatrix::has(TransitionId t) const
{
    return std::binary_search(transitions_.begin(), transitions_.end(), t);
}

std::size_t DbmMatrix::pos(TransitionId t) const
{
    auto it = std::lower_bound(transitions_.begin(), transitions_.end(), t);
    if (it == transitions_.end() || *it != t)
        throw ContractError("transition " + std::to_string(t) + " is not indexed by the matrix");
    return static_cast<std::size_t>(it - transitions_.begin()) + 1;
}

bool DbmMatrix::entrywise_le(const DbmMatrix& other) const
{
    if (transitions_ != other.transitions_)
        throw ContractError("comparing matrices over different index sets");
    for (std::size_t k = 0; k < cells_.size(); ++k)
        if (other.cells_[k] < cells_[k])
            return false;
    return true;
}

void DbmMatrix::close()
{
    const auto n = dim();
    for (std::size_t k = 0; k < n; ++k)
        for (std::size_t i = 0; i < n; ++i) {
            if (at(i, k).is_infinite())
                continue;
            for (std::size_t j = 0; j < n; ++j) {
                auto via = at(i, k) + at(k, j);
                if (via < at(i, j))
                    at(i, j) = via;
            }
        }
}

bool DbmMatrix::is_closed() const
{
    DbmMatrix copy = *this;
    copy.close();
    return copy == *this;
}

std::string DbmMatrix::str(const Net& net) const
{
    std::ostringstream os;
    auto label = [&](std::size_t k) { return k == dot ? std::string(".") : net.transition_name(transitions_[k - 1]); };
    for (std::size_t r = 0; r < dim(); ++r) {
        os << label(r) << ':';
        for (std::size_t c = 0; c < dim(); ++c)
            os << (c == 0 ? " " : ", ") << at(r, c);
        os << '\n';
    }
    return os.str();
}

std::size_t DbmMatrix::hash() const
{
    std::size_t h = transitions_.size();
    for (auto t : transitions_)
        hash_combine(h, t);
    for (const auto& b : cells_)
        hash_combine(h, hash_bound(b));
    return h;
}

DbmClass initial_dbm(const Net& net)
{
    DbmClass c;
    c.marking = net.initial_marking();
    c.d = DbmMatrix(enabled_set(net, c.marking));
    const auto& ts = c.d.transitions();
    for (std::size_t a = 0; a < ts.size(); ++a) {
        c.d.at(DbmMatrix::dot, a + 1) = net.tmax(ts[a]);
        c.d.at(a + 1, DbmMatrix::dot) = Bound(-net.tmin(ts[a]));
        for (std::size_t b = 0; b < ts.size(); ++b)
            if (a != b)
                c.d.at(a + 1, b + 1) = net.tmax(ts[b]) - Bound(net.tmin(ts[a]));
    }
    return c;
}

std::vector<Bound> beta(const Net& net, const DbmClass& c)
{
    auto activated = split_status(net, c.marking).activated;
    if (activated.empty())
        throw ContractError("dead class: no activated transition");
    std::vector<Bound> out(c.d.dim(), Bound::infinity());
    for (std::size_t x = 0; x < c.d.dim(); ++x)
        for (TransitionId t : activated)
            out[x] = min(out[x], c.d.at(x, c.d.pos(t)));
    return out;
}

bool firable_dbm(const Net& net, const DbmClass& c, TransitionId t)
{
    if (!contains(split_status(net, c.marking).activated, t))
        return false;
    return beta(net, c)[c.d.pos(t)] >= Bound(0);
}

DbmClass successor_dbm(const Net& net, const DbmClass& c, TransitionId t_f)
{
    if (!firable_dbm(net, c, t_f))
        throw ContractError("successor_dbm: " + net.transition_name(t_f) + " is not firable");
    const auto b = beta(net, c);
    const auto& D = c.d;
    const std::size_t f = D.pos(t_f);
    const auto status = split_status(net, c.marking);

    DbmClass next;
    next.marking = fire_marking(net, c.marking, t_f);
    const auto fresh = newly_enabled(net, c.marking, t_f, next.marking);
    auto indexed = enabled_set(net, next.marking);
    for (auto t : D.transitions())
        if (t >= net.transition_count())
            indexed.push_back(t);
    next.d = DbmMatrix(std::move(indexed));
    auto& N = next.d;
    const auto& ts = N.transitions();

    // per new position: old position (0 when newly enabled) and inhibition at M
    std::vector<std::size_t> old(ts.size() + 1, 0);
    std::vector<bool> inhibited(ts.size() + 1, false);
    for (std::size_t k = 1; k <= ts.size(); ++k) {
        auto t = ts[k - 1];
        if (t < net.transition_count() && contains(fresh, t)) {
            N.at(DbmMatrix::dot, k) = net.tmax(t);
            N.at(k, DbmMatrix::dot) = Bound(-net.tmin(t));
            continue;
        }
        old[k] = D.pos(t);
        inhibited[k] = t < net.transition_count() && contains(status.inhibited, t);
        if (inhibited[k]) {
            N.at(k, DbmMatrix::dot) = min(D.at(old[k], 0), D.at(f, 0) + b[old[k]]);
            N.at(DbmMatrix::dot, k) = min(D.at(0, old[k]), D.at(f, old[k]) + b[0]);
        } else {
            N.at(DbmMatrix::dot, k) = D.at(f, old[k]);
            N.at(k, DbmMatrix::dot) = b[old[k]];
        }
    }

    for (std::size_t k1 = 1; k1 <= ts.size(); ++k1)
        for (std::size_t k2 = 1; k2 <= ts.size(); ++k2) {
            if (k1 == k2)
                continue;
            Bound via = N.at(DbmMatrix::dot, k2) + N.at(k1, DbmMatrix::dot);
            if (old[k1] == 0 || old[k2] == 0) {
                N.at(k1, k2) = via;
                continue;
            }
            Bound prev = D.at(old[k1], old[k2]);
            if (inhibited[k1] && !inhibited[k2])
                prev = prev + D.at(f, 0);
            else if (!inhibited[k1] && inhibited[k2])
                prev = prev + b[0];
            N.at(k1, k2) = min(prev, via);
        }
    return next;
}

DbmClass with_observer(const DbmClass& c, TransitionId observer)
{
    auto ts = c.d.transitions();
    if (!ts.empty() && ts.back() >= observer)
        throw ContractError("observer id must exceed every indexed transition");
    ts.push_back(observer);
    DbmClass out{c.marking, DbmMatrix(ts)};
    const auto o = out.d.dim() - 1;
    for (std::size_t r = 0; r < c.d.dim(); ++r)
        for (std::size_t k = 0; k < c.d.dim(); ++k)
            out.d.at(r, k) = c.d.at(r, k);
    out.d.at(DbmMatrix::dot, o) = 0;
    out.d.at(o, DbmMatrix::dot) = 0;
    for (std::size_t k = 1; k < o; ++k) {
        out.d.at(o, k) = c.d.at(DbmMatrix::dot, k);
        out.d.at(k, o) = c.d.at(k, DbmMatrix::dot);
    }
    return out;
}

}  // namespace itpn
