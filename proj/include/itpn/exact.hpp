#pragma once

#include "itpn/dbm.hpp"
#include "itpn/linear_system.hpp"
#include "itpn/net.hpp"

#include <optional>
#include <vector>

namespace itpn {

/// Exact state class: marking plus a polyhedral system over the residual
/// firing times of Te(M). Variable tags are transition ids, ascending.
struct ExactClass {
    Marking marking;
    LinearSystem d;
    /// Tightest DBM enclosing d; canonical, used for hashing.
    DbmMatrix tight;
};

/// Tightest DBM over `vars` (which must be the system's variables).
DbmMatrix tightest_dbm(const LinearSystem& s, const TransitionSet& vars);

ExactClass initial_exact(const Net& net, OracleBudget budget = {});
bool firable_exact(const Net& net, const ExactClass& c, TransitionId t);
ExactClass exact_successor(const Net& net, const ExactClass& c, TransitionId t_f, OracleBudget budget = {});

/// Same marking and same solution set.
bool exact_equal(const ExactClass& a, const ExactClass& b);
/// Same marking and solutions of a contained in those of b.
bool exact_included(const ExactClass& a, const ExactClass& b);

/// The class system of a firing sequence in which every firing delay is
/// kept as a variable θ_1..θ_n next to the clocks of Te(M).
class TraceSystem {
public:
    static VarTag delay_tag(std::size_t k) { return (VarTag{1} << 32) + static_cast<VarTag>(k); }

    static TraceSystem initial(const Net& net, OracleBudget budget = {});
    /// Starts a trace at an arbitrary class; its entry is point 0.
    static TraceSystem from_class(const ExactClass& c);

    const Marking& marking() const { return marking_; }
    std::size_t depth() const { return depth_; }
    const LinearSystem& system() const { return sys_; }
    TransitionSet enabled() const;

    bool firable(const Net& net, TransitionId t) const;
    /// Fires t_f symbolically; its delay becomes θ_{n+1}.
    TraceSystem fire(const Net& net, TransitionId t_f) const;
    /// Fires t_f after exactly `delay` time units; the delay is substituted.
    TraceSystem fire_timed(const Net& net, TransitionId t_f, const Rational& delay) const;
    bool is_consistent() const { return sys_.is_consistent(); }

    /// sup of θ_{i+1}+..+θ_n (DS[i,n]).
    Bound point_to_now(std::size_t i) const;
    /// sup of −(θ_{i+1}+..+θ_n) (DS[n,i]).
    Bound now_to_point(std::size_t i) const;
    /// sup of θ_{i+1}+..+θ_n + t (DS[i,t]).
    Bound point_to_transition(std::size_t i, TransitionId t) const;
    /// sup of −(θ_{i+1}+..+θ_n + t) (DS[t,i]).
    Bound transition_to_point(TransitionId t, std::size_t i) const;

private:
    TraceSystem advance(const Net& net, TransitionId t_f, const std::optional<Rational>& delay) const;
    Bound sup(const LinearForm& form) const;
    LinearForm delays_since(std::size_t i, std::int64_t sign) const;

    Marking marking_;
    LinearSystem sys_;
    std::size_t depth_ = 0;
    /// Whether θ_k is still a variable (false once substituted).
    std::vector<bool> symbolic_;
};

}  // namespace itpn
