#pragma once

#include <unordered_map>
#include <utility>
#include <vector>

#include "osa/analytic.hpp"
#include "osa/model.hpp"
#include "osa/policy.hpp"

namespace osa {

struct SolverLimits {
    i64 max_nodes = 5'000'000;
};

struct SspEdge {
    i64 to = 0;        // remaining size after a successful transmission
    int channel_id = 0;
    Rat cost_seconds;  // slot/p for full slots, slot (1-p)/p + s/r for final edges
};

// Expectation-collapsed shortest path graph: nodes are the remaining sizes
// (in quanta) reachable from the source, edges strictly decrease the state.
struct SspGraph {
    i64 source = 0;
    std::vector<i64> nodes;                 // breadth-first order; nodes[0] == source
    std::vector<std::vector<SspEdge>> out;  // per node, one edge per channel (none at 0)
    std::unordered_map<i64, int> index;

    i64 node_count() const { return static_cast<i64>(nodes.size()); }
    i64 edge_count() const;
};

// Breadth-first expansion from the file size; every node except 0 gets one
// outgoing edge per channel. Throws when the node cap is exceeded (use
// solve_mip for such instances) or when a channel is not Bernoulli.
SspGraph build_ssp_graph(const Scenario& scenario, FileTask file, const SolverLimits& limits = {});

// Dijkstra over exact rational distances. The returned plan's analytic
// value equals the optimal distance exactly.
std::pair<PolicyPlan, ExpectedTime> solve_shortest_path(const SspGraph& graph,
                                                        const Scenario& scenario);

struct DynamicSolution {
    std::unordered_map<i64, int> channel_for;  // state -> channel id, all reachable states
    ExpectedTime value;
};

// Policy iteration over the same state space (evaluation is a single
// ascending sweep because every transmission strictly decreases the state).
DynamicSolution solve_policy_iteration(const Scenario& scenario, FileTask file,
                                       const SolverLimits& limits = {});

// Condensed solution of the slot-count program: x_i full slots per channel,
// at most one positive final fraction y_i in [0, 1).
struct MipSolution {
    std::vector<i64> slot_counts;     // x, per scenario channel order
    std::vector<Rat> final_fraction;  // y, per scenario channel order
    ExpectedTime objective;
};

// Depth-first branch and bound over slot counts, branching on channels by
// descending throughput and pruning with the remaining/(r* p*) lower bound.
// Among equal-objective solutions prefers fewer switches, then the
// lexicographically smallest x.
std::pair<MipSolution, PolicyPlan> solve_mip(const Scenario& scenario, FileTask file);

// Orders the slot counts into contiguous per-channel groups along a greedy
// nearest-id chain starting from the largest count; the partial transmission
// goes last. The plan's expected time equals the solution objective.
PolicyPlan plan_from_counts(const MipSolution& solution, const Scenario& scenario);

// Sends floor(F / slot r_{i*}) full slots through the max-throughput channel
// and the remainder through its static-optimal channel.
std::pair<PolicyPlan, ExpectedTime> heuristic_policy(const Scenario& scenario, FileTask file);

// Decision rule for a policy kind at a given file size. Plan-backed kinds
// replan (memoized) at remaining sizes off the precomputed trajectory,
// which arise only under switching-delay shortfalls.
PolicyRule make_rule(const Scenario& scenario, const PolicyKind& kind, FileTask file);

}  // namespace osa
