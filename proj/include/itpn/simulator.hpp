#pragma once

#include "itpn/net.hpp"

#include <cstdint>
#include <map>
#include <stdexcept>
#include <vector>

namespace itpn {

/// Residual firing interval of one enabled transition.
struct ClockInterval {
    Rational lo{0};
    Bound hi{0};

    friend bool operator==(const ClockInterval&, const ClockInterval&) = default;
};

struct ConcreteState {
    Marking marking;
    std::map<TransitionId, ClockInterval> clocks;

    friend bool operator==(const ConcreteState&, const ConcreteState&) = default;
};

class RejectedStep : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

ConcreteState initial_state(const Net& net);

/// [x(t_f), min over activated t of y(t)] for an activated t_f.
ClockInterval firing_window(const Net& net, const ConcreteState& s, TransitionId t_f);

ConcreteState sim_step(const Net& net, const ConcreteState& s, TransitionId t_f, const Rational& theta);

struct TimedStep {
    TransitionId transition;
    Rational delay;
};

struct TimedRun {
    std::vector<TimedStep> steps;
    bool deadlocked = false;
};

/// Random walk of at most `length` steps. Delays are multiples of 1/8
/// drawn uniformly from the legal window; an unbounded window is capped
/// at lo + 16.
TimedRun random_run(const Net& net, std::size_t length, std::uint64_t seed);

/// Replays a run from the initial state; throws RejectedStep on the first
/// illegal step.
ConcreteState replay(const Net& net, const std::vector<TimedStep>& steps);

}  // namespace itpn
