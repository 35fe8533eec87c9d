#include "osa/policy.hpp"

#include <mutex>
#include <stdexcept>

namespace osa {

i64 PolicyPlan::total_quanta(const Scenario& scenario) const {
    i64 total = 0;
    for (const PlanSegment& seg : segments)
        total += seg.slots * scenario.slot_quanta(scenario.index_of(seg.channel_id));
    if (final_segment) total += final_segment->quanta;
    return total;
}

i64 PolicyPlan::transmissions() const {
    i64 n = 0;
    for (const PlanSegment& seg : segments) n += seg.slots;
    if (final_segment) ++n;
    return n;
}

i64 PolicyPlan::switches() const {
    i64 count = 0;
    int prev = -1;
    for (const PlanSegment& seg : segments) {
        if (seg.slots == 0) continue;
        if (prev >= 0 && seg.channel_id != prev) ++count;
        prev = seg.channel_id;
    }
    if (final_segment && prev >= 0 && final_segment->channel_id != prev) ++count;
    return count;
}

std::string PolicyPlan::summary() const {
    std::string out;
    for (const PlanSegment& seg : segments) {
        if (seg.slots == 0) continue;
        if (!out.empty()) out.push_back(';');
        out += std::to_string(seg.channel_id) + "x" + std::to_string(seg.slots);
    }
    if (final_segment) {
        if (!out.empty()) out.push_back(';');
        out += std::to_string(final_segment->channel_id) + "~" + std::to_string(final_segment->quanta);
    }
    return out;
}

PolicyKind PolicyKind::parse(std::string_view text) {
    if (text == "static-opt") return {Type::StaticOpt, -1};
    if (text == "max-tp") return {Type::MaxThroughput, -1};
    if (text == "heuristic") return {Type::Heuristic, -1};
    if (text == "dynamic-opt") return {Type::DynamicOpt, -1};
    if (text.rfind("static:", 0) == 0) {
        try {
            return {Type::StaticChannel, std::stoi(std::string(text.substr(7)))};
        } catch (const std::exception&) {
        }
    }
    throw std::invalid_argument(
        "policy: expected static:<id>, static-opt, max-tp, heuristic or dynamic-opt, got '" +
        std::string(text) + "'");
}

std::string PolicyKind::name() const {
    switch (type) {
        case Type::StaticChannel: return "static:" + std::to_string(channel_id);
        case Type::StaticOpt: return "static-opt";
        case Type::MaxThroughput: return "max-tp";
        case Type::Heuristic: return "heuristic";
        case Type::DynamicOpt: return "dynamic-opt";
    }
    return "?";
}

std::unordered_map<i64, int> plan_trajectory(const Scenario& scenario, const PolicyPlan& plan) {
    std::unordered_map<i64, int> table;
    i64 remaining = plan.total_quanta(scenario);
    for (const PlanSegment& seg : plan.segments) {
        i64 w = scenario.slot_quanta(scenario.index_of(seg.channel_id));
        for (i64 n = 0; n < seg.slots; ++n) {
            table.emplace(remaining, seg.channel_id);
            remaining -= w;
        }
    }
    if (plan.final_segment) {
        table.emplace(remaining, plan.final_segment->channel_id);
        remaining -= plan.final_segment->quanta;
    }
    if (remaining != 0) throw std::invalid_argument("plan amounts exceed the plan total");
    return table;
}

struct PolicyRule::Impl {
    enum class Mode { Constant, Table, Progress };
    Mode mode = Mode::Constant;
    Scenario scenario;
    int constant_channel = -1;

    // Table mode: trajectory states plus memoized replans.
    mutable std::unordered_map<i64, int> table;
    Replanner replanner;
    mutable std::mutex mutex;

    // Progress mode: per-transmission schedule by cumulative progress.
    i64 plan_total = 0;
    std::vector<std::pair<i64, int>> progress_bounds;  // (progress exclusive upper bound, channel)

    explicit Impl(Scenario s) : scenario(std::move(s)) {}
};

PolicyRule PolicyRule::static_channel(const Scenario& scenario, int channel_id) {
    scenario.index_of(channel_id);  // validate
    auto impl = std::make_shared<Impl>(scenario);
    impl->mode = Impl::Mode::Constant;
    impl->constant_channel = channel_id;
    return PolicyRule(std::move(impl));
}

PolicyRule PolicyRule::from_plan(const Scenario& scenario, const PolicyPlan& plan,
                                 Replanner replanner) {
    return dynamic_lookup(scenario, plan_trajectory(scenario, plan), std::move(replanner));
}

PolicyRule PolicyRule::dynamic_lookup(const Scenario& scenario,
                                      std::unordered_map<i64, int> table, Replanner replanner) {
    auto impl = std::make_shared<Impl>(scenario);
    impl->mode = Impl::Mode::Table;
    impl->table = std::move(table);
    impl->replanner = std::move(replanner);
    return PolicyRule(std::move(impl));
}

PolicyRule PolicyRule::from_plan_progress(const Scenario& scenario, const PolicyPlan& plan) {
    auto impl = std::make_shared<Impl>(scenario);
    impl->mode = Impl::Mode::Progress;
    impl->plan_total = plan.total_quanta(scenario);
    i64 progress = 0;
    for (const PlanSegment& seg : plan.segments) {
        if (seg.slots == 0) continue;
        i64 w = scenario.slot_quanta(scenario.index_of(seg.channel_id));
        progress += seg.slots * w;
        impl->progress_bounds.emplace_back(progress, seg.channel_id);
    }
    if (plan.final_segment) {
        progress += plan.final_segment->quanta;
        impl->progress_bounds.emplace_back(progress, plan.final_segment->channel_id);
    }
    if (impl->progress_bounds.empty()) throw std::invalid_argument("empty plan");
    return PolicyRule(std::move(impl));
}

int PolicyRule::channel_for(i64 remaining_quanta) const {
    const Impl& impl = *impl_;
    if (remaining_quanta <= 0) throw std::invalid_argument("remaining size must be positive");
    switch (impl.mode) {
        case Impl::Mode::Constant:
            return impl.constant_channel;
        case Impl::Mode::Progress: {
            i64 progress = impl.plan_total - remaining_quanta;
            for (const auto& [bound, channel] : impl.progress_bounds)
                if (progress < bound) return channel;
            // Beyond the schedule (accumulated shortfalls): stay on the
            // final channel until the transfer completes.
            return impl.progress_bounds.back().second;
        }
        case Impl::Mode::Table: {
            {
                std::lock_guard<std::mutex> lock(impl.mutex);
                auto it = impl.table.find(remaining_quanta);
                if (it != impl.table.end()) return it->second;
            }
            if (!impl.replanner)
                throw std::invalid_argument("state " + std::to_string(remaining_quanta) +
                                            " not covered by the policy table");
            PolicyPlan plan = impl.replanner(remaining_quanta);
            auto addition = plan_trajectory(impl.scenario, plan);
            std::lock_guard<std::mutex> lock(impl.mutex);
            for (const auto& [state, channel] : addition) impl.table.emplace(state, channel);
            auto it = impl.table.find(remaining_quanta);
            if (it == impl.table.end())
                throw std::logic_error("replanner did not cover the requested state");
            return it->second;
        }
    }
    throw std::logic_error("unreachable");
}

}  // namespace osa
