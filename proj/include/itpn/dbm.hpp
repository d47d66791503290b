#pragma once

#include "itpn/bound.hpp"
#include "itpn/net.hpp"

#include <cstddef>
#include <string>
#include <vector>

namespace itpn {

/// Square bound matrix over {•} ∪ Te(M). Position 0 is the class-entry
/// instant •, position k > 0 the k-th transition in ascending net order.
/// Cell (x, y) bounds y − x.
class DbmMatrix {
public:
    static constexpr std::size_t dot = 0;

    DbmMatrix() : DbmMatrix(TransitionSet{}) {}
    /// Zero diagonal, +∞ elsewhere.
    explicit DbmMatrix(TransitionSet transitions);

    std::size_t dim() const { return transitions_.size() + 1; }
    const TransitionSet& transitions() const { return transitions_; }
    bool has(TransitionId t) const;
    /// Position of t; throws ContractError when t is not indexed.
    std::size_t pos(TransitionId t) const;

    Bound& at(std::size_t row, std::size_t col) { return cells_[row * dim() + col]; }
    const Bound& at(std::size_t row, std::size_t col) const { return cells_[row * dim() + col]; }

    /// Upper bound of t, D[•,t].
    const Bound& upper(TransitionId t) const { return at(dot, pos(t)); }
    /// Negated lower bound of t, D[t,•].
    const Bound& neg_lower(TransitionId t) const { return at(pos(t), dot); }
    const Bound& diff(TransitionId from, TransitionId to) const { return at(pos(from), pos(to)); }

    /// True when every entry of *this is ≤ the entry of other.
    bool entrywise_le(const DbmMatrix& other) const;

    /// Floyd–Warshall shortest-path closure, in place.
    void close();
    bool is_closed() const;

    std::string str(const Net& net) const;
    std::size_t hash() const;

    friend bool operator==(const DbmMatrix&, const DbmMatrix&) = default;

private:
    TransitionSet transitions_;
    std::vector<Bound> cells_;
};

struct DbmClass {
    Marking marking;
    DbmMatrix d;

    friend bool operator==(const DbmClass&, const DbmClass&) = default;
};

DbmClass initial_dbm(const Net& net);

/// β[x] = MIN over activated t of D[x,t], indexed by matrix position.
/// Throws ContractError when no transition is activated.
std::vector<Bound> beta(const Net& net, const DbmClass& c);

bool firable_dbm(const Net& net, const DbmClass& c, TransitionId t);

DbmClass successor_dbm(const Net& net, const DbmClass& c, TransitionId t_f);

/// Adds an observer column o (an id ≥ net.transition_count()) reading 0 at
/// the class entry. It ages like a persistent activated transition but never
/// fires and never constrains firing. The time elapsed since the entry lies
/// in [−D[•,o], D[o,•]] after any number of successor_dbm steps.
DbmClass with_observer(const DbmClass& c, TransitionId observer);

std::size_t hash_marking(const Marking& m);
void hash_combine(std::size_t& seed, std::size_t value);
std::size_t hash_bound(const Bound& b);

}  // namespace itpn
