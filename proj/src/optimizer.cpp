#include "osa/optimizer.hpp"

#include <algorithm>
#include <cstdlib>
#include <deque>
#include <queue>
#include <stdexcept>

namespace osa {

namespace {

void require_all_bernoulli(const Scenario& scenario, const char* what) {
    if (!scenario.all_bernoulli())
        throw std::invalid_argument(std::string(what) +
                                    ": dynamic policies are defined over Bernoulli channels only");
}

Rat edge_cost(const Scenario& scenario, int idx, i64 from_state) {
    const Rat& p = scenario.avail_exact(idx);
    if (from_state > scenario.slot_quanta(idx))
        return scenario.slot_seconds() / p;  // full slot: expected wait + transmit
    return scenario.slot_seconds() * (1 - p) / p +
           scenario.mb_from_quanta(from_state) / scenario.rate_mbps_exact(idx);
}

}  // namespace

i64 SspGraph::edge_count() const {
    i64 count = 0;
    for (const auto& list : out) count += static_cast<i64>(list.size());
    return count;
}

SspGraph build_ssp_graph(const Scenario& scenario, FileTask file, const SolverLimits& limits) {
    require_all_bernoulli(scenario, "build_ssp_graph");
    SspGraph graph;
    graph.source = file.quanta;
    graph.nodes.push_back(file.quanta);
    graph.index.emplace(file.quanta, 0);
    std::deque<int> frontier{0};
    while (!frontier.empty()) {
        int at = frontier.front();
        frontier.pop_front();
        i64 state = graph.nodes[at];
        if (state == 0) continue;
        if (static_cast<std::size_t>(at) >= graph.out.size()) graph.out.resize(at + 1);
        for (int idx = 0; idx < scenario.channel_count(); ++idx) {
            i64 to = std::max<i64>(0, state - scenario.slot_quanta(idx));
            auto [it, inserted] = graph.index.emplace(to, static_cast<int>(graph.nodes.size()));
            if (inserted) {
                graph.nodes.push_back(to);
                if (graph.node_count() > limits.max_nodes)
                    throw std::runtime_error(
                        "build_ssp_graph: state count exceeds " + std::to_string(limits.max_nodes) +
                        " nodes; solve this instance with solve_mip instead");
                frontier.push_back(it->second);
            }
            graph.out[at].push_back(
                {to, scenario.channels()[idx].id, edge_cost(scenario, idx, state)});
        }
    }
    graph.out.resize(graph.nodes.size());
    return graph;
}

std::pair<PolicyPlan, ExpectedTime> solve_shortest_path(const SspGraph& graph,
                                                        const Scenario& scenario) {
    const int n = static_cast<int>(graph.nodes.size());
    std::vector<Rat> dist(n);
    std::vector<bool> settled(n, false), reached(n, false);
    std::vector<int> pred_node(n, -1), pred_channel(n, -1);

    using Entry = std::pair<Rat, int>;
    auto cmp = [](const Entry& a, const Entry& b) {
        return a.first > b.first || (a.first == b.first && a.second > b.second);
    };
    std::priority_queue<Entry, std::vector<Entry>, decltype(cmp)> queue(cmp);
    reached[0] = true;
    queue.emplace(Rat(0), 0);

    int sink = graph.index.at(0);
    while (!queue.empty()) {
        auto [d, at] = queue.top();
        queue.pop();
        if (settled[at]) continue;
        settled[at] = true;
        if (at == sink) break;
        for (const SspEdge& edge : graph.out[at]) {
            int to = graph.index.at(edge.to);
            Rat candidate = d + edge.cost_seconds;
            if (!reached[to] || candidate < dist[to]) {
                reached[to] = true;
                dist[to] = candidate;
                pred_node[to] = at;
                pred_channel[to] = edge.channel_id;
                queue.emplace(dist[to], to);
            }
        }
    }
    if (!settled[sink]) throw std::logic_error("sink unreachable; graph malformed");

    // Walk the predecessor chain from the sink back to the source.
    std::vector<std::pair<i64, int>> hops;  // (state the hop left from, channel)
    for (int at = sink; pred_node[at] >= 0; at = pred_node[at])
        hops.emplace_back(graph.nodes[pred_node[at]], pred_channel[at]);
    std::reverse(hops.begin(), hops.end());

    PolicyPlan plan;
    for (std::size_t i = 0; i < hops.size(); ++i) {
        auto [state, channel] = hops[i];
        i64 w = scenario.slot_quanta(scenario.index_of(channel));
        bool final_partial = i + 1 == hops.size() && state < w;
        if (final_partial) {
            plan.final_segment = FinalSegment{channel, state};
        } else if (!plan.segments.empty() && plan.segments.back().channel_id == channel) {
            ++plan.segments.back().slots;
        } else {
            plan.segments.push_back({channel, 1});
        }
    }
    return {std::move(plan), ExpectedTime{dist[sink]}};
}

DynamicSolution solve_policy_iteration(const Scenario& scenario, FileTask file,
                                       const SolverLimits& limits) {
    SspGraph graph = build_ssp_graph(scenario, file, limits);

    std::vector<i64> states = graph.nodes;  // ascending, 0 first
    std::sort(states.begin(), states.end());

    // Any static policy is proper (all p > 0); start from max throughput.
    int start_channel = scenario.channels()[max_throughput_index(scenario)].id;
    std::unordered_map<i64, int> policy;
    for (i64 s : states)
        if (s > 0) policy.emplace(s, start_channel);

    std::unordered_map<i64, Rat> value;
    value.emplace(0, Rat(0));
    bool stable = false;
    while (!stable) {
        // Evaluation: one ascending sweep; each transmission strictly
        // decreases the state, so successors are already evaluated.
        for (i64 s : states) {
            if (s == 0) continue;
            const auto& edges = graph.out[graph.index.at(s)];
            for (const SspEdge& edge : edges)
                if (edge.channel_id == policy.at(s)) {
                    value[s] = edge.cost_seconds + value.at(edge.to);
                    break;
                }
        }
        // Improvement, ties to the smallest channel id (edge order).
        stable = true;
        for (i64 s : states) {
            if (s == 0) continue;
            const auto& edges = graph.out[graph.index.at(s)];
            int best_channel = -1;
            Rat best;
            for (const SspEdge& edge : edges) {
                Rat candidate = edge.cost_seconds + value.at(edge.to);
                if (best_channel < 0 || candidate < best) {
                    best_channel = edge.channel_id;
                    best = std::move(candidate);
                }
            }
            if (best_channel != policy.at(s)) {
                policy[s] = best_channel;
                stable = false;
            }
        }
    }
    return {std::move(policy), ExpectedTime{value.at(file.quanta)}};
}

namespace {

struct BranchAndBound {
    const Scenario& scenario;
    int n;
    std::vector<int> order;          // channel indices, descending throughput
    std::vector<i64> width;          // slot quanta per ordered level
    std::vector<Rat> slot_cost;      // slot/p per ordered level
    std::vector<Rat> slack;          // slot_cost - width * per_quantum, >= 0
    std::vector<Rat> final_jump;     // slot (1-p)/p per channel index
    std::vector<Rat> sec_per_quantum;
    Rat per_quantum;                 // quantum / max throughput

    std::vector<i64> x;  // per ordered level
    Rat best_value;
    std::vector<i64> best_x;  // per channel index
    int best_final_channel = -1;
    i64 best_final_quanta = 0;
    i64 best_switches = 0;

    explicit BranchAndBound(const Scenario& s) : scenario(s), n(s.channel_count()) {
        Rat tp_max(0);
        for (int i = 0; i < n; ++i) tp_max = std::max(tp_max, s.throughput_exact(i));
        per_quantum = s.quantum_mb() / tp_max;
        order.resize(n);
        for (int i = 0; i < n; ++i) order[i] = i;
        std::sort(order.begin(), order.end(), [&](int a, int b) {
            if (s.throughput_exact(a) != s.throughput_exact(b))
                return s.throughput_exact(a) > s.throughput_exact(b);
            return s.channels()[a].id < s.channels()[b].id;
        });
        for (int level = 0; level < n; ++level) {
            int idx = order[level];
            width.push_back(s.slot_quanta(idx));
            slot_cost.push_back(s.slot_seconds() / s.avail_exact(idx));
            slack.push_back(slot_cost.back() - width.back() * per_quantum);
        }
        for (int idx = 0; idx < n; ++idx) {
            final_jump.push_back(s.slot_seconds() * (1 - s.avail_exact(idx)) / s.avail_exact(idx));
            sec_per_quantum.push_back(s.quantum_mb() / s.rate_mbps_exact(idx));
        }
        x.assign(n, 0);
    }

    void seed(const PolicyPlan& plan) {
        best_x.assign(n, 0);
        for (const PlanSegment& seg : plan.segments)
            best_x[scenario.index_of(seg.channel_id)] += seg.slots;
        best_final_channel = -1;
        best_final_quanta = 0;
        if (plan.final_segment) {
            best_final_channel = scenario.index_of(plan.final_segment->channel_id);
            best_final_quanta = plan.final_segment->quanta;
        }
        best_value = dynamic_expected_time(plan, scenario).value;
        best_switches = plan.switches();
    }

    i64 plan_switches(const std::vector<i64>& counts, int final_channel, i64 final_quanta) const {
        MipSolution candidate;
        candidate.slot_counts = counts;
        candidate.final_fraction.assign(n, Rat(0));
        if (final_channel >= 0)
            candidate.final_fraction[final_channel] =
                make_rat(final_quanta, scenario.slot_quanta(final_channel));
        return plan_from_counts(candidate, scenario).switches();
    }

    void offer(const Rat& value, int final_channel, i64 final_quanta) {
        std::vector<i64> counts(n, 0);
        for (int level = 0; level < n; ++level) counts[order[level]] = x[level];
        if (value == best_value) {
            i64 switches = plan_switches(counts, final_channel, final_quanta);
            if (switches > best_switches) return;
            if (switches == best_switches && counts >= best_x) return;
            best_switches = switches;
        } else {
            best_switches = plan_switches(counts, final_channel, final_quanta);
        }
        best_value = value;
        best_x = std::move(counts);
        best_final_channel = final_channel;
        best_final_quanta = final_quanta;
    }

    void close(const Rat& cost, i64 rem) {
        if (rem == 0) {
            if (cost <= best_value) offer(cost, -1, 0);
            return;
        }
        for (int idx = 0; idx < n; ++idx) {
            if (scenario.slot_quanta(idx) <= rem) continue;
            Rat value = cost + final_jump[idx] + rem * sec_per_quantum[idx];
            if (value <= best_value) offer(value, idx, rem);
        }
    }

    void descend(int level, i64 rem, const Rat& cost) {
        if (rem == 0) {
            close(cost, 0);
            return;
        }
        // Completing rem costs at least rem / (r* p*) on top of what is spent.
        Rat headroom = best_value - cost - rem * per_quantum;
        if (headroom < 0) return;
        if (level == n) {
            close(cost, rem);
            return;
        }
        i64 cnt = rem / width[level];
        if (slack[level] > 0) {
            // cost + cnt*slot_cost + (rem - cnt*width)*per_quantum <= best
            cnt = std::min(cnt, floor_to_i64(headroom / slack[level]));
        }
        for (; cnt >= 0; --cnt) {
            x[level] = cnt;
            descend(level + 1, rem - cnt * width[level], cost + cnt * slot_cost[level]);
        }
        x[level] = 0;
    }

    MipSolution finish() {
        MipSolution out;
        out.slot_counts = best_x;
        out.final_fraction.assign(n, Rat(0));
        if (best_final_channel >= 0)
            out.final_fraction[best_final_channel] =
                make_rat(best_final_quanta, scenario.slot_quanta(best_final_channel));
        out.objective = ExpectedTime{best_value};
        return out;
    }
};

}  // namespace

std::pair<MipSolution, PolicyPlan> solve_mip(const Scenario& scenario, FileTask file) {
    require_all_bernoulli(scenario, "solve_mip");
    BranchAndBound search(scenario);
    search.seed(heuristic_policy(scenario, file).first);
    search.descend(0, file.quanta, Rat(0));
    MipSolution solution = search.finish();
    PolicyPlan plan = plan_from_counts(solution, scenario);
    return {std::move(solution), std::move(plan)};
}

PolicyPlan plan_from_counts(const MipSolution& solution, const Scenario& scenario) {
    const int n = scenario.channel_count();
    if (static_cast<int>(solution.slot_counts.size()) != n ||
        static_cast<int>(solution.final_fraction.size()) != n)
        throw std::invalid_argument("plan_from_counts: vector sizes must match the channel count");

    std::vector<int> used;
    for (int idx = 0; idx < n; ++idx)
        if (solution.slot_counts[idx] > 0) used.push_back(idx);

    PolicyPlan plan;
    if (!used.empty()) {
        // Start from the largest count, then hop to the nearest channel id.
        int current = used[0];
        for (int idx : used)
            if (solution.slot_counts[idx] > solution.slot_counts[current] ||
                (solution.slot_counts[idx] == solution.slot_counts[current] &&
                 scenario.channels()[idx].id < scenario.channels()[current].id))
                current = idx;
        std::vector<int> remaining(used.begin(), used.end());
        remaining.erase(std::find(remaining.begin(), remaining.end(), current));
        plan.segments.push_back({scenario.channels()[current].id, solution.slot_counts[current]});
        while (!remaining.empty()) {
            int cur_id = scenario.channels()[current].id;
            auto nearest = std::min_element(
                remaining.begin(), remaining.end(), [&](int a, int b) {
                    int da = std::abs(scenario.channels()[a].id - cur_id);
                    int db = std::abs(scenario.channels()[b].id - cur_id);
                    if (da != db) return da < db;
                    return scenario.channels()[a].id < scenario.channels()[b].id;
                });
            current = *nearest;
            remaining.erase(nearest);
            plan.segments.push_back(
                {scenario.channels()[current].id, solution.slot_counts[current]});
        }
    }
    int final_count = 0;
    for (int idx = 0; idx < n; ++idx) {
        const Rat& y = solution.final_fraction[idx];
        if (y == 0) continue;
        if (!(y > 0 && y < 1))
            throw std::invalid_argument("plan_from_counts: final fraction must lie in [0, 1)");
        if (++final_count > 1)
            throw std::invalid_argument("plan_from_counts: at most one final fraction may be positive");
        Rat quanta = y * scenario.slot_quanta(idx);
        if (quanta.get_den() != 1)
            throw std::invalid_argument("plan_from_counts: final fraction is not a whole number of quanta");
        plan.final_segment = FinalSegment{scenario.channels()[idx].id,
                                          static_cast<i64>(quanta.get_num().get_si())};
    }
    return plan;
}

std::pair<PolicyPlan, ExpectedTime> heuristic_policy(const Scenario& scenario, FileTask file) {
    require_all_bernoulli(scenario, "heuristic_policy");
    int star_idx = max_throughput_index(scenario);
    i64 w_star = scenario.slot_quanta(star_idx);
    i64 full = file.quanta / w_star;
    i64 tail = file.quanta % w_star;

    PolicyPlan plan;
    if (full > 0) plan.segments.push_back({scenario.channels()[star_idx].id, full});
    if (tail > 0) {
        int so_id = static_optimal_channel(scenario, FileTask{tail}).first;
        int so_idx = scenario.index_of(so_id);
        i64 w_so = scenario.slot_quanta(so_idx);
        if (tail / w_so > 0) plan.segments.push_back({so_id, tail / w_so});
        if (tail % w_so > 0) plan.final_segment = FinalSegment{so_id, tail % w_so};
    }
    ExpectedTime value = dynamic_expected_time(plan, scenario);
    return {std::move(plan), std::move(value)};
}

PolicyRule make_rule(const Scenario& scenario, const PolicyKind& kind, FileTask file) {
    switch (kind.type) {
        case PolicyKind::Type::StaticChannel:
            return PolicyRule::static_channel(scenario, kind.channel_id);
        case PolicyKind::Type::StaticOpt:
            return PolicyRule::static_channel(scenario,
                                              static_optimal_channel(scenario, file).first);
        case PolicyKind::Type::MaxThroughput:
            return PolicyRule::static_channel(
                scenario, scenario.channels()[max_throughput_index(scenario)].id);
        case PolicyKind::Type::Heuristic:
            return PolicyRule::from_plan(scenario, heuristic_policy(scenario, file).first,
                                         [scenario](i64 s) {
                                             return heuristic_policy(scenario, FileTask{s}).first;
                                         });
        case PolicyKind::Type::DynamicOpt:
            return PolicyRule::from_plan(scenario, solve_mip(scenario, file).second,
                                         [scenario](i64 s) {
                                             return solve_mip(scenario, FileTask{s}).second;
                                         });
    }
    throw std::logic_error("unreachable");
}

}  // namespace osa
