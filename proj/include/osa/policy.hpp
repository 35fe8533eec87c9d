#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "osa/model.hpp"

namespace osa {

struct PlanSegment {
    int channel_id = 0;
    i64 slots = 0;  // full-slot transmissions
};

struct FinalSegment {
    int channel_id = 0;
    i64 quanta = 0;  // in (0, slot_quanta]
};

// An ordered transmission plan: full-slot segments followed by an optional
// partial final transmission. The plan's file size is the sum of all
// segment amounts.
struct PolicyPlan {
    std::vector<PlanSegment> segments;
    std::optional<FinalSegment> final_segment;

    i64 total_quanta(const Scenario& scenario) const;
    // Number of successful transmissions |pi|.
    i64 transmissions() const;
    // Adjacent channel changes across the segment sequence.
    i64 switches() const;
    std::string summary() const;  // e.g. "6x3;3~150"
};

struct PolicyKind {
    enum class Type { StaticChannel, StaticOpt, MaxThroughput, Heuristic, DynamicOpt };
    Type type = Type::MaxThroughput;
    int channel_id = -1;  // StaticChannel only

    static PolicyKind parse(std::string_view text);  // "static:3", "static-opt", ...
    std::string name() const;
    bool operator==(const PolicyKind&) const = default;
};

// State-to-channel decision rule, total over every positive remaining size.
// Plan-backed rules follow the plan's state trajectory and fall back to a
// replanner for states the trajectory never visits (switching-delay
// shortfalls); replanned trajectories are memoized.
class PolicyRule {
public:
    using Replanner = std::function<PolicyPlan(i64 remaining_quanta)>;

    static PolicyRule static_channel(const Scenario& scenario, int channel_id);
    static PolicyRule from_plan(const Scenario& scenario, const PolicyPlan& plan,
                                Replanner replanner);
    // Executes the plan by cumulative progress with no replanning: a
    // shortfall keeps the current segment running until its amount is done.
    static PolicyRule from_plan_progress(const Scenario& scenario, const PolicyPlan& plan);
    static PolicyRule dynamic_lookup(const Scenario& scenario,
                                     std::unordered_map<i64, int> table, Replanner replanner);

    int channel_for(i64 remaining_quanta) const;

private:
    struct Impl;
    explicit PolicyRule(std::shared_ptr<Impl> impl) : impl_(std::move(impl)) {}
    std::shared_ptr<Impl> impl_;
};

// Expands the plan into per-state decisions keyed by remaining size.
std::unordered_map<i64, int> plan_trajectory(const Scenario& scenario, const PolicyPlan& plan);

}  // namespace osa
