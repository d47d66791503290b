#include "itpn/linear_system.hpp"

#include "itpn/errors.hpp"

#include <boost/dynamic_bitset.hpp>

#include <algorithm>
#include <limits>
#include <numeric>
#include <sstream>
#include <unordered_map>

namespace itpn {

namespace {

constexpr VarTag kAux = std::numeric_limits<VarTag>::min();

std::int64_t checked_mul(std::int64_t a, std::int64_t b)
{
    std::int64_t r;
    if (__builtin_mul_overflow(a, b, &r))
        throw BudgetError("coefficient overflow in Fourier-Motzkin elimination");
    return r;
}

std::int64_t checked_add(std::int64_t a, std::int64_t b)
{
    std::int64_t r;
    if (__builtin_add_overflow(a, b, &r))
        throw BudgetError("coefficient overflow in Fourier-Motzkin elimination");
    return r;
}

/// Divides by the gcd of the coefficients; returns false for a zero row.
bool normalize(Constraint& c)
{
    std::int64_t g = 0;
    for (auto a : c.coeffs)
        g = std::gcd(g, a < 0 ? -a : a);
    if (g == 0)
        return false;
    if (g != 1) {
        for (auto& a : c.coeffs)
            a /= g;
        c.bound /= g;
    }
    return true;
}

struct CoeffHash {
    std::size_t operator()(const std::vector<std::int64_t>& v) const
    {
        std::size_t h = v.size();
        for (auto a : v)
            h ^= std::hash<std::int64_t>{}(a) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
        return h;
    }
};

struct TrackedRow {
    Constraint c;
    boost::dynamic_bitset<> history;
};

}  // namespace

LinearSystem::LinearSystem(std::vector<VarTag> vars, OracleBudget budget) : vars_(std::move(vars)), budget_(budget)
{
    check_budget();
}

bool LinearSystem::has_variable(VarTag x) const
{
    return std::find(vars_.begin(), vars_.end(), x) != vars_.end();
}

std::size_t LinearSystem::column(VarTag x) const
{
    auto it = std::find(vars_.begin(), vars_.end(), x);
    if (it == vars_.end())
        throw ContractError("unknown variable " + std::to_string(x));
    return static_cast<std::size_t>(it - vars_.begin());
}

void LinearSystem::add_variable(VarTag x)
{
    if (has_variable(x))
        throw ContractError("duplicate variable " + std::to_string(x));
    vars_.push_back(x);
    for (auto& r : rows_)
        r.coeffs.push_back(0);
    check_budget();
}

void LinearSystem::rename(VarTag from, VarTag to)
{
    if (has_variable(to))
        throw ContractError("rename target already present");
    vars_[column(from)] = to;
}

void LinearSystem::reorder(const std::vector<VarTag>& order)
{
    if (order.size() != vars_.size())
        throw ContractError("reorder expects a permutation of the variables");
    std::vector<std::size_t> src;
    src.reserve(order.size());
    for (auto x : order)
        src.push_back(column(x));
    for (auto& r : rows_) {
        std::vector<std::int64_t> c(order.size());
        for (std::size_t k = 0; k < order.size(); ++k)
            c[k] = r.coeffs[src[k]];
        r.coeffs = std::move(c);
    }
    vars_ = order;
}

void LinearSystem::check_budget() const
{
    if (vars_.size() > budget_.max_variables)
        throw BudgetError("linear system exceeds " + std::to_string(budget_.max_variables) + " variables");
    if (rows_.size() > budget_.max_constraints)
        throw BudgetError("linear system exceeds " + std::to_string(budget_.max_constraints) + " constraints");
}

void LinearSystem::insert(Constraint c)
{
    if (!normalize(c)) {
        if (c.bound < 0)
            infeasible_ = true;
        return;
    }
    for (auto& r : rows_)
        if (r.coeffs == c.coeffs) {
            if (c.bound < r.bound)
                r.bound = c.bound;
            return;
        }
    rows_.push_back(std::move(c));
}

void LinearSystem::rebuild_index()
{
    auto old = std::move(rows_);
    rows_.clear();
    for (auto& r : old)
        insert(std::move(r));
    check_budget();
}

void LinearSystem::add(const LinearForm& form, const Bound& bound)
{
    if (bound.is_infinite())
        return;
    Constraint c{std::vector<std::int64_t>(vars_.size(), 0), bound.value()};
    for (const auto& [x, a] : form) {
        auto& slot = c.coeffs[column(x)];
        slot = checked_add(slot, a);
    }
    insert(std::move(c));
    check_budget();
}

void LinearSystem::add_row(std::vector<std::int64_t> coeffs, const Rational& bound)
{
    if (coeffs.size() != vars_.size())
        throw ContractError("row width does not match the variable count");
    insert({std::move(coeffs), bound});
    check_budget();
}

void LinearSystem::add_upper(VarTag x, const Bound& b) { add({{x, 1}}, b); }

void LinearSystem::add_lower(VarTag x, const Rational& a) { add({{x, -1}}, Bound(Rational(-a))); }

void LinearSystem::add_difference(VarTag x, VarTag y, const Bound& b) { add({{y, 1}, {x, -1}}, b); }

void LinearSystem::shift(VarTag x, VarTag by)
{
    const auto cx = column(x), cb = column(by);
    for (auto& r : rows_)
        r.coeffs[cb] = checked_add(r.coeffs[cb], r.coeffs[cx]);
    rebuild_index();
}

void LinearSystem::assign(VarTag x, const Rational& value)
{
    const auto cx = column(x);
    for (auto& r : rows_) {
        r.bound -= r.coeffs[cx] * value;
        r.coeffs.erase(r.coeffs.begin() + static_cast<std::ptrdiff_t>(cx));
    }
    vars_.erase(vars_.begin() + static_cast<std::ptrdiff_t>(cx));
    rebuild_index();
}

void LinearSystem::eliminate(VarTag x) { eliminate_all({x}); }

void LinearSystem::eliminate_all(const std::vector<VarTag>& xs)
{
    std::vector<VarTag> pending = xs;
    for (auto x : pending)
        column(x);

    std::vector<TrackedRow> rows;
    rows.reserve(rows_.size());
    for (std::size_t k = 0; k < rows_.size(); ++k) {
        boost::dynamic_bitset<> h(rows_.size());
        h.set(k);
        rows.push_back({std::move(rows_[k]), std::move(h)});
    }
    rows_.clear();

    std::size_t eliminated = 0;
    while (!pending.empty() && !infeasible_) {
        // pick the variable producing the fewest combinations
        std::size_t best = 0;
        long best_cost = std::numeric_limits<long>::max();
        for (std::size_t k = 0; k < pending.size(); ++k) {
            const auto col = column(pending[k]);
            long pos = 0, neg = 0;
            for (const auto& r : rows) {
                pos += r.c.coeffs[col] > 0;
                neg += r.c.coeffs[col] < 0;
            }
            long cost = pos * neg - pos - neg;
            if (cost < best_cost) {
                best_cost = cost;
                best = k;
            }
        }
        const VarTag x = pending[best];
        pending.erase(pending.begin() + static_cast<std::ptrdiff_t>(best));
        const auto col = column(x);
        ++eliminated;

        std::vector<TrackedRow> next;
        std::unordered_map<std::vector<std::int64_t>, std::size_t, CoeffHash> seen;
        auto push = [&](TrackedRow r) {
            r.c.coeffs.erase(r.c.coeffs.begin() + static_cast<std::ptrdiff_t>(col));
            if (!normalize(r.c)) {
                if (r.c.bound < 0)
                    infeasible_ = true;
                return;
            }
            auto [it, fresh] = seen.try_emplace(r.c.coeffs, next.size());
            if (fresh) {
                next.push_back(std::move(r));
                return;
            }
            auto& kept = next[it->second];
            if (r.c.bound < kept.c.bound ||
                (r.c.bound == kept.c.bound && r.history.count() < kept.history.count()))
                kept = std::move(r);
        };

        std::vector<const TrackedRow*> pos, neg;
        for (auto& r : rows) {
            auto a = r.c.coeffs[col];
            if (a > 0)
                pos.push_back(&r);
            else if (a < 0)
                neg.push_back(&r);
        }
        for (auto& r : rows)
            if (r.c.coeffs[col] == 0)
                push(std::move(r));
        for (const auto* p : pos)
            for (const auto* q : neg) {
                auto h = p->history | q->history;
                if (h.count() > eliminated + 1)
                    continue;
                const auto ap = p->c.coeffs[col];
                const auto aq = -q->c.coeffs[col];
                TrackedRow r{{std::vector<std::int64_t>(p->c.coeffs.size()), Rational(0)}, std::move(h)};
                for (std::size_t k = 0; k < r.c.coeffs.size(); ++k)
                    r.c.coeffs[k] = checked_add(checked_mul(aq, p->c.coeffs[k]), checked_mul(ap, q->c.coeffs[k]));
                r.c.bound = aq * p->c.bound + ap * q->c.bound;
                push(std::move(r));
                if (next.size() > budget_.max_constraints)
                    throw BudgetError("Fourier-Motzkin elimination exceeds " +
                                      std::to_string(budget_.max_constraints) + " constraints");
            }
        rows = std::move(next);
        vars_.erase(vars_.begin() + static_cast<std::ptrdiff_t>(col));
    }

    for (auto x : pending)
        vars_.erase(vars_.begin() + static_cast<std::ptrdiff_t>(column(x)));
    if (infeasible_) {
        rows_.clear();
        return;
    }
    for (auto& r : rows)
        rows_.push_back(std::move(r.c));
}

bool LinearSystem::is_consistent() const
{
    if (infeasible_)
        return false;
    LinearSystem copy = *this;
    copy.eliminate_all(copy.vars_);
    return !copy.infeasible_;
}

std::optional<Bound> LinearSystem::maximize(const LinearForm& form) const
{
    if (infeasible_)
        return std::nullopt;
    LinearSystem copy = *this;
    copy.budget_.max_variables = budget_.max_variables + 1;
    copy.add_variable(kAux);
    LinearForm row{{kAux, 1}};
    for (const auto& [x, a] : form)
        row.emplace_back(x, -a);
    copy.add(row, Bound(0));
    auto others = vars_;
    copy.eliminate_all(others);
    if (copy.infeasible_)
        return std::nullopt;
    Bound upper = Bound::infinity();
    std::optional<Rational> lower;
    for (const auto& r : copy.rows_) {
        const auto a = r.coeffs[0];
        Rational v = r.bound / a;
        if (a > 0)
            upper = min(upper, Bound(v));
        else if (!lower || v > *lower)
            lower = v;
    }
    if (lower && upper < Bound(*lower))
        return std::nullopt;
    return upper;
}

bool LinearSystem::entails(const Constraint& c) const
{
    LinearForm form;
    for (std::size_t k = 0; k < c.coeffs.size(); ++k)
        if (c.coeffs[k] != 0)
            form.emplace_back(vars_[k], c.coeffs[k]);
    auto sup = maximize(form);
    return !sup || *sup <= Bound(c.bound);
}

bool LinearSystem::entails_all(const LinearSystem& other) const
{
    if (!is_consistent())
        return true;
    for (const auto& r : other.rows_) {
        LinearForm form;
        for (std::size_t k = 0; k < r.coeffs.size(); ++k)
            if (r.coeffs[k] != 0)
                form.emplace_back(other.vars_[k], r.coeffs[k]);
        auto sup = maximize(form);
        if (sup && Bound(r.bound) < *sup)
            return false;
    }
    if (other.infeasible_)
        return false;
    return true;
}

void LinearSystem::simplify()
{
    if (infeasible_)
        return;
    for (std::size_t k = rows_.size(); k-- > 0;) {
        LinearSystem rest = *this;
        rest.rows_.erase(rest.rows_.begin() + static_cast<std::ptrdiff_t>(k));
        if (rest.entails(rows_[k]))
            rows_ = std::move(rest.rows_);
    }
}

bool LinearSystem::satisfied_by(const std::vector<Rational>& point) const
{
    if (point.size() != vars_.size())
        throw ContractError("point dimension does not match the system");
    if (infeasible_)
        return false;
    for (const auto& r : rows_) {
        Rational lhs = 0;
        for (std::size_t k = 0; k < point.size(); ++k)
            lhs += r.coeffs[k] * point[k];
        if (lhs > r.bound)
            return false;
    }
    return true;
}

std::string LinearSystem::str(const std::vector<std::string>& names) const
{
    std::ostringstream os;
    if (infeasible_)
        os << "false\n";
    for (const auto& r : rows_) {
        bool first = true;
        for (std::size_t k = 0; k < r.coeffs.size(); ++k) {
            auto a = r.coeffs[k];
            if (a == 0)
                continue;
            os << (a < 0 ? (first ? "-" : " - ") : (first ? "" : " + "));
            if (a != 1 && a != -1)
                os << (a < 0 ? -a : a) << '*';
            os << (k < names.size() ? names[k] : "x" + std::to_string(vars_[k]));
            first = false;
        }
        os << " <= " << to_string(r.bound) << '\n';
    }
    return os.str();
}

}  // namespace itpn
