#pragma once

#include "itpn/bound.hpp"

#include <compare>
#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace itpn {

using PlaceId = std::size_t;
using TransitionId = std::size_t;

/// Sorted list of transition indices.
using TransitionSet = std::vector<TransitionId>;

struct Marking {
    std::vector<std::uint32_t> tokens;

    std::uint32_t operator[](PlaceId p) const { return tokens[p]; }
    std::size_t size() const { return tokens.size(); }

    friend auto operator<=>(const Marking&, const Marking&) = default;
};

struct StaticInterval {
    Rational tmin{0};
    Bound tmax{0};

    friend bool operator==(const StaticInterval&, const StaticInterval&) = default;
};

/// Immutable time Petri net with inhibitor arcs. Build it through
/// NetBuilder; afterwards it can be shared freely between threads.
class Net {
public:
    std::size_t place_count() const { return place_names_.size(); }
    std::size_t transition_count() const { return transition_names_.size(); }

    const std::string& place_name(PlaceId p) const { return place_names_.at(p); }
    const std::string& transition_name(TransitionId t) const { return transition_names_.at(t); }
    PlaceId place_index(const std::string& name) const;
    TransitionId transition_index(const std::string& name) const;
    bool has_place(const std::string& name) const;
    bool has_transition(const std::string& name) const;

    /// Backward incidence B(p,t): tokens consumed from p by t.
    std::uint32_t pre(PlaceId p, TransitionId t) const { return pre_[p * transition_count() + t]; }
    /// Forward incidence F(p,t): tokens produced in p by t.
    std::uint32_t post(PlaceId p, TransitionId t) const { return post_[p * transition_count() + t]; }
    /// Inhibitor valuation IH(p,t); zero means no inhibitor arc.
    std::uint32_t inhibitor(PlaceId p, TransitionId t) const { return inhib_[p * transition_count() + t]; }

    const StaticInterval& interval(TransitionId t) const { return intervals_.at(t); }
    const Rational& tmin(TransitionId t) const { return intervals_.at(t).tmin; }
    const Bound& tmax(TransitionId t) const { return intervals_.at(t).tmax; }
    const Marking& initial_marking() const { return initial_; }

    bool has_inhibitor_arcs() const;

    friend bool operator==(const Net&, const Net&) = default;

private:
    friend class NetBuilder;

    std::vector<std::string> place_names_;
    std::vector<std::string> transition_names_;
    std::vector<std::uint32_t> pre_;
    std::vector<std::uint32_t> post_;
    std::vector<std::uint32_t> inhib_;
    std::vector<StaticInterval> intervals_;
    Marking initial_;
};

class NetBuilder {
public:
    PlaceId add_place(const std::string& name, std::uint32_t tokens = 0);
    /// Throws ContractError when tmin > tmax or tmin < 0.
    TransitionId add_transition(const std::string& name, const Rational& tmin, const Bound& tmax);
    void add_input(PlaceId p, TransitionId t, std::uint32_t weight = 1);
    void add_output(TransitionId t, PlaceId p, std::uint32_t weight = 1);
    void add_inhibitor(PlaceId p, TransitionId t, std::uint32_t weight = 1);

    PlaceId place(const std::string& name) const;
    TransitionId transition(const std::string& name) const;

    Net build() const;

private:
    struct Arc {
        PlaceId place;
        TransitionId transition;
        std::uint32_t weight;
    };
    std::vector<std::string> places_;
    std::vector<std::uint32_t> tokens_;
    std::vector<std::string> transitions_;
    std::vector<StaticInterval> intervals_;
    std::vector<Arc> inputs_, outputs_, inhibitors_;
};

bool is_enabled(const Net& net, const Marking& m, TransitionId t);
bool is_inhibited(const Net& net, const Marking& m, TransitionId t);

/// Te(m): transitions whose preset is covered by m.
TransitionSet enabled_set(const Net& net, const Marking& m);

struct EnablingStatus {
    TransitionSet activated;
    TransitionSet inhibited;
};

/// Splits Te(m) into activated and inhibited transitions.
EnablingStatus split_status(const Net& net, const Marking& m);

/// Both transitions must be enabled and distinct.
bool conflicting(const Net& net, const Marking& m, TransitionId t1, TransitionId t2);

Marking fire_marking(const Net& net, const Marking& m, TransitionId t);

/// New(m_next) after firing t_f from m. The fired transition counts as
/// newly enabled whenever it is enabled again (monoserver semantics).
TransitionSet newly_enabled(const Net& net, const Marking& m, TransitionId t_f, const Marking& m_next);

bool contains(const TransitionSet& set, TransitionId t);

std::string format_marking(const Net& net, const Marking& m);

}  // namespace itpn
