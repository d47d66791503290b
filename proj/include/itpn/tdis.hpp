#pragma once

#include "itpn/dbm.hpp"
#include "itpn/net.hpp"

#include <map>
#include <string>
#include <utility>
#include <vector>

namespace itpn {

/// Firing depth along the path that produced a class; 0 is the initial
/// class, -1 means "none".
using PointId = int;

struct PointMaps {
    /// Te(M), ascending; ne/ni/na are aligned with it.
    TransitionSet enabled;
    std::vector<PointId> ne, ni, na;
    /// [Ne] ∪ [Ni] ∪ [Na] − {−1}, ascending.
    std::vector<PointId> points;

    std::size_t slot(TransitionId t) const;
    PointId ne_of(TransitionId t) const { return ne[slot(t)]; }
    PointId ni_of(TransitionId t) const { return ni[slot(t)]; }
    PointId na_of(TransitionId t) const { return na[slot(t)]; }

    friend bool operator==(const PointMaps&, const PointMaps&) = default;
};

/// Time distance tables over rows `index` (tracked points plus the
/// current point n, ascending) and columns `transitions`.
///   ds(i,t)  = DS[i,t]   upper bound of the distance from point i to t
///   ds(t,i)  = DS[t,i]   negated lower bound of the same distance
///   to_now(i)   = DS[i,n]
///   from_now(i) = DS[n,i]
class DistanceSystem {
public:
    DistanceSystem() = default;
    DistanceSystem(std::vector<PointId> index, TransitionSet transitions);

    const std::vector<PointId>& index() const { return index_; }
    const TransitionSet& transitions() const { return transitions_; }
    PointId current() const { return index_.back(); }
    bool has_point(PointId i) const;

    Bound& up(PointId i, TransitionId t) { return up_t_[cell(i, t)]; }
    const Bound& up(PointId i, TransitionId t) const { return up_t_[cell(i, t)]; }
    Bound& lo(TransitionId t, PointId i) { return lo_t_[cell(i, t)]; }
    const Bound& lo(TransitionId t, PointId i) const { return lo_t_[cell(i, t)]; }
    Bound& to_now(PointId i) { return up_n_[row(i)]; }
    const Bound& to_now(PointId i) const { return up_n_[row(i)]; }
    Bound& from_now(PointId i) { return lo_n_[row(i)]; }
    const Bound& from_now(PointId i) const { return lo_n_[row(i)]; }

    std::string str(const Net& net) const;

    friend bool operator==(const DistanceSystem&, const DistanceSystem&) = default;

private:
    std::size_t row(PointId i) const;
    std::size_t cell(PointId i, TransitionId t) const;

    std::vector<PointId> index_;
    TransitionSet transitions_;
    std::vector<Bound> up_t_, lo_t_, up_n_, lo_n_;
};

/// (DS^k[k,t], DS^k[t,k]) or (DS^k[i,t], DS^k[t,i]) recorded at step k.
using DistancePair = std::pair<Bound, Bound>;

struct HistorySnapshots {
    /// creation[i][t]: the row of the current point i at step i.
    std::map<PointId, std::map<TransitionId, DistancePair>> creation;
    /// inhibition[t] = (s, {i -> (DS^s[i,t], DS^s[t,i])}) with s = Ni(t).
    std::map<TransitionId, std::pair<PointId, std::map<PointId, DistancePair>>> inhibition;

    friend bool operator==(const HistorySnapshots&, const HistorySnapshots&) = default;
};

struct TdisOptions {
    /// MIN the newly-enabled pairs of D_c with α as well.
    bool alpha_on_new_pairs = false;
    /// Use DS^n[i,n] + DS^{n-1}[n-1,t] + DS^{n-1}[t_f,n-1] as the last
    /// term of DS^n[i,t] instead of DS^n[i,n] + D_c^{n-1}[t_f,t].
    bool loose_upper_term = false;
};

struct TdisClass {
    Marking marking;
    PointId depth = 0;
    PointMaps points;
    /// Points kept alive for measurement; they never feed α.
    std::vector<PointId> pinned;
    DistanceSystem ds;
    HistorySnapshots hist;
    /// Transition-pair bounds; the • row and column mirror DS[n,t] and DS[t,n].
    DbmMatrix dc;
};

TdisClass initial_tdis(const Net& net);

/// Keeps the current point tracked from now on.
TdisClass pin_current_point(const TdisClass& c);

/// A depth-0 class carrying only the marking and D_c of c: history before
/// c is forgotten, every enabled transition counts as enabled at point 0.
TdisClass rebase(const Net& net, const TdisClass& c);

/// λ[i] = MIN over activated t of DS[i,t], keyed by point.
std::map<PointId, Bound> lambda(const Net& net, const TdisClass& c);

bool firable_tdis(const Net& net, const TdisClass& c, TransitionId t);

/// Fires t_f. With pin_new_point the new current point stays tracked even
/// when no transition references it.
TdisClass class_successor(const Net& net, const TdisClass& c, TransitionId t_f, const TdisOptions& opts = {},
                          bool pin_new_point = false);

/// Point maps, tables and snapshots with points renamed to 0..k in order.
TdisClass relabel_points(const TdisClass& c);

}  // namespace itpn
