#include "itpn/simulator.hpp"

#include "itpn/errors.hpp"

#include <random>

namespace itpn {

ConcreteState initial_state(const Net& net)
{
    ConcreteState s;
    s.marking = net.initial_marking();
    for (TransitionId t : enabled_set(net, s.marking))
        s.clocks[t] = {net.tmin(t), net.tmax(t)};
    return s;
}

ClockInterval firing_window(const Net& net, const ConcreteState& s, TransitionId t_f)
{
    auto status = split_status(net, s.marking);
    if (!contains(status.activated, t_f))
        throw RejectedStep(net.transition_name(t_f) + " is not activated");
    Bound upper = Bound::infinity();
    for (TransitionId t : status.activated)
        upper = min(upper, s.clocks.at(t).hi);
    return {s.clocks.at(t_f).lo, upper};
}

ConcreteState sim_step(const Net& net, const ConcreteState& s, TransitionId t_f, const Rational& theta)
{
    auto window = firing_window(net, s, t_f);
    if (theta < window.lo || Bound(theta) > window.hi)
        throw RejectedStep("delay " + to_string(theta) + " outside the firing window of " +
                           net.transition_name(t_f));

    ConcreteState next;
    next.marking = fire_marking(net, s.marking, t_f);
    auto fresh = newly_enabled(net, s.marking, t_f, next.marking);
    for (TransitionId t : enabled_set(net, next.marking)) {
        if (contains(fresh, t)) {
            next.clocks[t] = {net.tmin(t), net.tmax(t)};
            continue;
        }
        const auto& v = s.clocks.at(t);
        if (is_inhibited(net, s.marking, t)) {
            next.clocks[t] = v;
        } else {
            Rational lo = v.lo - theta;
            if (lo < 0)
                lo = 0;
            next.clocks[t] = {lo, v.hi - Bound(theta)};
        }
    }
    return next;
}

TimedRun random_run(const Net& net, std::size_t length, std::uint64_t seed)
{
    std::mt19937_64 rng(seed);
    TimedRun run;
    ConcreteState s = initial_state(net);
    for (std::size_t k = 0; k < length; ++k) {
        std::vector<std::pair<TransitionId, ClockInterval>> options;
        for (TransitionId t : split_status(net, s.marking).activated) {
            auto w = firing_window(net, s, t);
            if (Bound(w.lo) <= w.hi)
                options.emplace_back(t, w);
        }
        if (options.empty()) {
            run.deadlocked = true;
            break;
        }
        std::uniform_int_distribution<std::size_t> pick(0, options.size() - 1);
        const auto& [t, w] = options[pick(rng)];
        Rational hi = w.hi.is_infinite() ? Rational(w.lo + 16) : w.hi.value();
        // multiples of 1/8 inside [lo, hi]
        mpz_class first, last;
        Rational lo8 = w.lo * 8, hi8 = hi * 8;
        mpz_cdiv_q(first.get_mpz_t(), lo8.get_num_mpz_t(), lo8.get_den_mpz_t());
        mpz_fdiv_q(last.get_mpz_t(), hi8.get_num_mpz_t(), hi8.get_den_mpz_t());
        Rational theta = w.lo;
        if (first <= last) {
            mpz_class span = last - first;
            std::uniform_int_distribution<unsigned long> step(0, span.get_ui());
            theta = Rational(first + step(rng), 8);
            theta.canonicalize();
        }
        s = sim_step(net, s, t, theta);
        run.steps.push_back({t, theta});
    }
    return run;
}

ConcreteState replay(const Net& net, const std::vector<TimedStep>& steps)
{
    ConcreteState s = initial_state(net);
    for (const auto& st : steps)
        s = sim_step(net, s, st.transition, st.delay);
    return s;
}

}  // namespace itpn
