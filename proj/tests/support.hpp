#pragma once

#include "itpn/model_io.hpp"
#include "itpn/net.hpp"

#include <string>
#include <vector>

namespace itpn::test {

inline Net fig1() { return load_model(std::string(ITPN_FIXTURE_DIR) + "/fig1.itpn"); }

inline std::vector<TransitionId> seq(const Net& net, std::initializer_list<const char*> names)
{
    std::vector<TransitionId> out;
    for (const char* n : names)
        out.push_back(net.transition_index(n));
    return out;
}

inline TransitionSet tset(const Net& net, std::initializer_list<const char*> names)
{
    TransitionSet out;
    for (const char* n : names)
        out.push_back(net.transition_index(n));
    std::sort(out.begin(), out.end());
    return out;
}

inline Marking marking(const Net& net, std::initializer_list<const char*> marked)
{
    Marking m{std::vector<std::uint32_t>(net.place_count(), 0)};
    for (const char* p : marked)
        m.tokens[net.place_index(p)] = 1;
    return m;
}

}  // namespace itpn::test
