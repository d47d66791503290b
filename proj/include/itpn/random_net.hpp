#pragma once

#include "itpn/net.hpp"

#include <cstdint>

namespace itpn {

struct RandomNetShape {
    std::size_t min_places = 2, max_places = 6;
    std::size_t min_transitions = 2, max_transitions = 6;
    std::size_t max_inhibitors = 2;
    int max_bound = 5;
};

/// Seeded random ITPN: every transition has one or two input places and
/// at most two output places, static bounds are integers in [0, max_bound].
Net random_net(std::uint64_t seed, const RandomNetShape& shape = {});

}  // namespace itpn
