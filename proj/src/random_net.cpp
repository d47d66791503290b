#include "itpn/random_net.hpp"

#include <random>

namespace itpn {

Net random_net(std::uint64_t seed, const RandomNetShape& shape)
{
    std::mt19937_64 rng(seed);
    auto pick = [&](std::size_t lo, std::size_t hi) { return std::uniform_int_distribution<std::size_t>(lo, hi)(rng); };

    NetBuilder b;
    const std::size_t np = pick(shape.min_places, shape.max_places);
    const std::size_t nt = pick(shape.min_transitions, shape.max_transitions);
    std::size_t tokens = pick(2, 4);
    std::vector<std::uint32_t> m0(np, 0);
    while (tokens-- > 0)
        m0[pick(0, np - 1)] = 1;
    for (std::size_t p = 0; p < np; ++p)
        b.add_place("p" + std::to_string(p + 1), m0[p]);

    std::vector<std::vector<PlaceId>> feeds(nt);
    // outputs never exceed inputs
    for (std::size_t t = 0; t < nt; ++t) {
        const auto lo = pick(0, static_cast<std::size_t>(shape.max_bound));
        const auto hi = pick(lo, static_cast<std::size_t>(shape.max_bound));
        const auto id = b.add_transition("t" + std::to_string(t + 1), Rational(static_cast<long>(lo)),
                                         Bound(static_cast<long>(hi)));
        std::size_t inputs = 1;
        const auto first = static_cast<PlaceId>(pick(0, np - 1));
        b.add_input(first, id);
        if (pick(0, 3) == 0) {
            const auto second = static_cast<PlaceId>(pick(0, np - 1));
            if (second != first) {
                b.add_input(second, id);
                ++inputs;
            }
        }
        const std::size_t outputs = pick(0, 7) == 0 ? inputs - 1 : inputs;
        for (std::size_t k = 0; k < outputs; ++k) {
            const auto p = static_cast<PlaceId>(pick(0, np - 1));
            b.add_output(id, p);
            feeds[t].push_back(p);
        }
    }
    // inhibitor places are taken from some transition's outputs
    const std::size_t inhibitors = pick(0, shape.max_inhibitors);
    for (std::size_t k = 0; k < inhibitors; ++k) {
        const auto target = static_cast<TransitionId>(pick(0, nt - 1));
        const auto feeder = static_cast<TransitionId>(pick(0, nt - 1));
        const auto p = feeder == target || feeds[feeder].empty() ? static_cast<PlaceId>(pick(0, np - 1))
                                                                   : feeds[feeder][pick(0, feeds[feeder].size() - 1)];
        b.add_inhibitor(p, target);
    }
    return b.build();
}

}  // namespace itpn
