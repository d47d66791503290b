#pragma once

#include "itpn/graph.hpp"

#include <string>

namespace itpn {

enum class DotVerbosity { brief, full };

/// One node per class (id and marking; matrices at full verbosity) and one
/// edge per firing, in node and edge order.
std::string export_dot(const Net& net, const StateClassGraph& g, DotVerbosity verbosity = DotVerbosity::brief);

/// Single-line JSON record: method, classes, edges, wall_ms, equivalence,
/// truncation flags.
std::string stats_json(const StateClassGraph& g);

/// Transition rows of a class matrix, e.g. "t3: 0, -1".
std::string matrix_rows(const Net& net, const DbmMatrix& d);

std::string format_sequence(const Net& net, const std::vector<TransitionId>& seq);

}  // namespace itpn
