#pragma once

#include "itpn/dbm.hpp"
#include "itpn/exact.hpp"
#include "itpn/net.hpp"
#include "itpn/tdis.hpp"

#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace itpn {

enum class Method { exact, dbm, tdis };
enum class Equivalence { equality, inclusion };

/// What a time-distance class is identified by when merging nodes.
///   approx: marking and the full D_c matrix (the class's DBM)
///   points: additionally Ne/Ni/Na and DS, points relabeled to 0..k
///   strict: additionally the history snapshots
enum class TdisIdentity { approx, points, strict };

std::string to_string(Method m);
std::string to_string(Equivalence e);
std::string to_string(TdisIdentity i);
Method parse_method(const std::string& s);
Equivalence parse_equivalence(const std::string& s);
TdisIdentity parse_tdis_identity(const std::string& s);

struct BuildOptions {
    Method method = Method::tdis;
    Equivalence equivalence = Equivalence::equality;
    TdisIdentity tdis_identity = TdisIdentity::approx;
    TdisOptions tdis;
    OracleBudget budget;
    std::size_t max_classes = 100000;
    /// Nodes at BFS depth ≥ max_depth are not expanded.
    std::size_t max_depth = std::numeric_limits<std::size_t>::max();
    /// Expand each BFS level with OpenMP workers.
    bool parallel = false;
};

using ClassPayload = std::variant<ExactClass, DbmClass, TdisClass>;

struct Edge {
    std::size_t source;
    TransitionId transition;
    std::size_t target;

    friend bool operator==(const Edge&, const Edge&) = default;
};

struct BuildStats {
    std::size_t classes = 0;
    std::size_t edges = 0;
    double wall_ms = 0;
    bool truncated_classes = false;
    bool truncated_depth = false;

    bool truncated() const { return truncated_classes || truncated_depth; }
};

struct StateClassGraph {
    Method method = Method::tdis;
    Equivalence equivalence = Equivalence::equality;
    std::vector<ClassPayload> nodes;
    std::vector<std::size_t> depth;
    std::vector<Edge> edges;
    /// Outgoing edge indices per node, in transition order.
    std::vector<std::vector<std::size_t>> out;
    BuildStats stats;

    std::size_t root() const { return 0; }
    const Marking& marking(std::size_t node) const;
    /// Target of the edge labeled t leaving node, or npos.
    std::size_t successor(std::size_t node, TransitionId t) const;

    static constexpr std::size_t npos = std::numeric_limits<std::size_t>::max();
};

class BoundedError : public std::runtime_error {
public:
    BoundedError(const std::string& what, StateClassGraph partial)
        : std::runtime_error(what), partial_(std::move(partial)) {}
    const StateClassGraph& partial() const { return partial_; }

private:
    StateClassGraph partial_;
};

/// Breadth-first construction; limits truncate and are flagged in stats.
StateClassGraph explore(const Net& net, const BuildOptions& opts);
/// Like explore, but throws BoundedError (carrying the partial graph)
/// when a limit was hit.
StateClassGraph build(const Net& net, const BuildOptions& opts);
/// Plain FIFO-queue construction; reference for explore.
StateClassGraph explore_serial(const Net& net, const BuildOptions& opts);

ClassPayload initial_class(const Net& net, const BuildOptions& opts);
bool firable(const Net& net, const ClassPayload& c, TransitionId t);
ClassPayload successor(const Net& net, const ClassPayload& c, TransitionId t, const BuildOptions& opts);

std::size_t class_hash(const ClassPayload& c, const BuildOptions& opts);
bool class_equal(const ClassPayload& a, const ClassPayload& b, const BuildOptions& opts);
/// Solutions of a contained in those of b (same marking).
bool class_included(const ClassPayload& a, const ClassPayload& b, const BuildOptions& opts);

/// Replays a transition sequence from the root; returns the node path
/// (root first) or an empty vector when some step has no edge.
std::vector<std::size_t> follow(const StateClassGraph& g, const std::vector<TransitionId>& seq);

struct DiffReport {
    /// Minimal sequences (every proper prefix shared) present in one graph only.
    std::vector<std::vector<TransitionId>> only_first, only_second;
    /// All sequences of length ≤ depth present in one graph only.
    std::uint64_t count_first = 0, count_second = 0;

    bool empty() const { return count_first == 0 && count_second == 0; }
};

DiffReport diff_graphs(const StateClassGraph& g1, const StateClassGraph& g2, std::size_t depth,
                       std::size_t max_examples = 1000);

/// Number of firing sequences of length ≤ depth from the root.
std::uint64_t count_sequences(const StateClassGraph& g, std::size_t depth);

}  // namespace itpn
