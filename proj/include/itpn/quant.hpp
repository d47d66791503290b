#pragma once

#include "itpn/graph.hpp"

#include <cstddef>
#include <optional>
#include <vector>

namespace itpn {

struct DurationBounds {
    Rational lo{0};
    Bound hi{0};

    friend bool operator==(const DurationBounds&, const DurationBounds&) = default;
};

/// A firing sequence starting at a graph node. `origin` is a position on
/// the path: 0 is the entry of the start class, k the entry of the class
/// reached after the k-th firing.
struct PathQuery {
    std::size_t start_node = 0;
    std::vector<TransitionId> transitions;
    std::size_t origin = 0;
    /// Always track the origin explicitly, even when the plain run keeps it.
    bool force_extension = false;
};

struct PathBounds {
    DurationBounds bounds;
    /// The origin had to be added to the tracked points.
    bool extended = false;
};

/// Bounds on the time elapsed from the origin to the end of the path.
/// The sequence is re-run from the start node; for the tdis method a
/// non-root start is rebased (history before the start is dropped). Returns
/// nullopt when the re-run cannot fire the whole sequence. Throws
/// std::invalid_argument on a path that is not in the graph.
std::optional<PathBounds> path_duration_bounds(const Net& net, const StateClassGraph& g, const PathQuery& q,
                                               const BuildOptions& opts = {});

struct TaskSpec {
    TransitionId start;
    TransitionId end;
};

struct ResponseLimits {
    std::size_t max_len = 64;
    std::size_t max_paths = 10000;
};

struct ResponseTime {
    bool found = false;
    Rational bcrt{0};
    Bound wcrt{0};
    std::size_t paths = 0;
    std::size_t infeasible_paths = 0;
    /// Enumeration stopped at a limit; wcrt is then +∞.
    bool truncated = false;
};

/// Enumerates every path that starts with an edge firing task.start and
/// ends at the first later edge firing task.end, each edge used at most once
/// per path, and measures from the entry of the class reached by the start
/// edge to the firing of the end edge.
ResponseTime response_time(const Net& net, const StateClassGraph& g, const TaskSpec& task,
                           const ResponseLimits& limits = {}, const BuildOptions& opts = {});

}  // namespace itpn
