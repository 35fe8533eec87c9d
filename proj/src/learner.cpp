#include "osa/learner.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "osa/analytic.hpp"
#include "osa/optimizer.hpp"
#include "osa/simulator.hpp"

namespace osa {

double bernoulli_kl(double p, double q) {
    double kl = 0;
    if (p > 0) {
        if (q <= 0) return HUGE_VAL;
        kl += p * std::log(p / q);
    }
    if (p < 1) {
        if (q >= 1) return HUGE_VAL;
        kl += (1 - p) * std::log((1 - p) / (1 - q));
    }
    return kl;
}

double kl_index(double mean, i64 n, i64 k) {
    if (k < 3) throw std::invalid_argument("kl_index: needs k >= 3 (log log k)");
    if (mean < 0 || mean > 1) throw std::invalid_argument("kl_index: mean must lie in [0, 1]");
    if (n < 0) throw std::invalid_argument("kl_index: negative observation count");
    if (n == 0 || mean >= 1) return 1.0;
    double threshold = regret_log_term(k) / static_cast<double>(n);
    double lo = mean, hi = 1.0;
    while (hi - lo > 1e-9) {
        double mid = 0.5 * (lo + hi);
        if (bernoulli_kl(mean, mid) <= threshold)
            lo = mid;
        else
            hi = mid;
    }
    return lo;
}

OnlineContext::OnlineContext(Scenario truth, PolicyKind kind)
    : truth_(std::move(truth)), kind_(kind), star_id_(max_throughput_channel(truth_)) {}

double OnlineContext::baseline_true(FileTask file) const {
    {
        std::lock_guard<std::mutex> lock(mutex_);
        auto it = baseline_.find(file.quanta);
        if (it != baseline_.end()) return it->second;
    }
    double value = static_expected_time(truth_, star_id_, file).seconds();
    std::lock_guard<std::mutex> lock(mutex_);
    return baseline_.emplace(file.quanta, value).first->second;
}

double OnlineContext::target_true(FileTask file) const {
    {
        std::lock_guard<std::mutex> lock(mutex_);
        auto it = target_.find(file.quanta);
        if (it != target_.end()) return it->second;
    }
    double value = 0;
    switch (kind_.type) {
        case PolicyKind::Type::StaticChannel:
            value = static_expected_time(truth_, kind_.channel_id, file).seconds();
            break;
        case PolicyKind::Type::StaticOpt:
            value = static_optimal_channel(truth_, file).second.seconds();
            break;
        case PolicyKind::Type::MaxThroughput:
            value = baseline_true(file);
            break;
        case PolicyKind::Type::Heuristic:
            value = heuristic_policy(truth_, file).second.seconds();
            break;
        case PolicyKind::Type::DynamicOpt:
            value = solve_mip(truth_, file).first.objective.seconds();
            break;
    }
    std::lock_guard<std::mutex> lock(mutex_);
    return target_.emplace(file.quanta, value).first->second;
}

namespace {

int argmax_throughput(const Scenario& scenario) {
    int best = 0;
    for (int i = 1; i < scenario.channel_count(); ++i)
        if (scenario.throughput_exact(i) > scenario.throughput_exact(best)) best = i;
    return scenario.channels()[best].id;
}

}  // namespace

OnlineRunResult run_algorithm1(const Scenario& truth, const PolicyKind& kind,
                               const std::vector<FileTask>& files, const OnlineConfig& config,
                               const OnlineContext* shared) {
    if (!truth.all_bernoulli())
        throw std::invalid_argument("run_algorithm1: availability learning assumes Bernoulli channels");
    const int n = truth.channel_count();
    const i64 total = static_cast<i64>(files.size());
    if (total <= n)
        throw std::invalid_argument("run_algorithm1: needs more episodes than channels (K > N)");

    std::optional<OnlineContext> local;
    if (!shared) local.emplace(truth, kind);
    const OnlineContext& ctx = shared ? *shared : *local;

    Scenario sim_scenario = config.switching_delay_ms
                                ? truth.with_switching_delay_ms(*config.switching_delay_ms)
                                : truth;
    Simulator simulator(sim_scenario);

    OnlineRunResult result;
    result.kind = kind;
    result.episodes.reserve(files.size());
    result.avg_time_ratio.reserve(files.size());
    result.avg_throughput.reserve(files.size());
    LearnerState state = config.prior ? *config.prior : LearnerState(n);
    if (static_cast<int>(state.counts.size()) != n)
        throw std::invalid_argument("run_algorithm1: prior state size mismatch");
    bool covered = true;
    for (i64 count : state.counts) covered = covered && count >= 1;

    double ratio_sum = 0, throughput_sum = 0;
    std::vector<double> hat_p(n);

    for (i64 k = 1; k <= total; ++k) {
        FileTask file = files[k - 1];
        state.episode = k;

        // The policy for this episode, frozen until the transfer completes.
        PolicyRule rule = PolicyRule::static_channel(truth, truth.channels()[0].id);
        std::string summary;
        double chosen_true = 0;

        if (k <= n && !covered) {
            // Warm-up: static policy on the k-th channel.
            int id = truth.channels()[k - 1].id;
            rule = PolicyRule::static_channel(truth, id);
            summary = "static:" + std::to_string(id);
            chosen_true = static_expected_time(truth, id, file).seconds();
        } else {
            for (int i = 0; i < n; ++i)
                hat_p[i] = std::clamp(kl_index(state.means[i], state.counts[i], std::max<i64>(k, 3)),
                                      config.clamp_min, 1.0);
            Scenario believed = truth.with_availability(hat_p);
            switch (kind.type) {
                case PolicyKind::Type::StaticChannel: {
                    rule = PolicyRule::static_channel(truth, kind.channel_id);
                    summary = kind.name();
                    chosen_true = static_expected_time(truth, kind.channel_id, file).seconds();
                    break;
                }
                case PolicyKind::Type::StaticOpt: {
                    int id = static_optimal_channel(believed, file).first;
                    rule = PolicyRule::static_channel(truth, id);
                    summary = "static:" + std::to_string(id);
                    chosen_true = static_expected_time(truth, id, file).seconds();
                    break;
                }
                case PolicyKind::Type::MaxThroughput: {
                    int id = argmax_throughput(believed);
                    rule = PolicyRule::static_channel(truth, id);
                    summary = "static:" + std::to_string(id);
                    chosen_true = static_expected_time(truth, id, file).seconds();
                    break;
                }
                case PolicyKind::Type::Heuristic: {
                    PolicyPlan plan = heuristic_policy(believed, file).first;
                    summary = plan.summary();
                    chosen_true = dynamic_expected_time(plan, truth).seconds();
                    rule = PolicyRule::from_plan(believed, plan, [believed](i64 s) {
                        return heuristic_policy(believed, FileTask{s}).first;
                    });
                    break;
                }
                case PolicyKind::Type::DynamicOpt: {
                    PolicyPlan plan = solve_mip(believed, file).second;
                    summary = plan.summary();
                    chosen_true = dynamic_expected_time(plan, truth).seconds();
                    rule = PolicyRule::from_plan(believed, plan, [believed](i64 s) {
                        return solve_mip(believed, FileTask{s}).second;
                    });
                    break;
                }
            }
        }

        EpisodeTrace trace =
            simulator.run(rule, file, config.replication_key.child(k), /*record_slots=*/true);
        for (const SlotRecord& slot : trace.records)
            state.observe(truth.index_of(slot.channel_id), slot.available);

        EpisodeRecord record;
        record.episode = k;
        record.file = file;
        record.chosen_summary = std::move(summary);
        record.time_s = trace.total_time_s;
        record.slots = trace.slots;
        record.switches = trace.switches;
        record.chosen_true_s = chosen_true;
        record.target_true_s = ctx.target_true(file);
        record.baseline_true_s = ctx.baseline_true(file);
        ratio_sum += record.time_s / record.baseline_true_s;
        throughput_sum += to_double(file.mb(truth)) / record.time_s;
        result.avg_time_ratio.push_back(ratio_sum / static_cast<double>(k));
        result.avg_throughput.push_back(throughput_sum / static_cast<double>(k));
        result.episodes.push_back(std::move(record));
    }
    result.final_state = std::move(state);
    return result;
}

std::vector<double> empirical_regret(const OnlineRunResult& result) {
    std::vector<double> curve;
    curve.reserve(result.episodes.size());
    double acc = 0;
    for (const EpisodeRecord& record : result.episodes) {
        acc += record.chosen_true_s - record.target_true_s;
        curve.push_back(acc);
    }
    return curve;
}

std::vector<FileTask> draw_file_sizes(const Scenario& scenario, RngKey replication_key,
                                      i64 count, double f_max_mb) {
    if (count <= 0) throw std::invalid_argument("draw_file_sizes: count must be positive");
    if (!(f_max_mb > 0)) throw std::invalid_argument("draw_file_sizes: F_max must be positive");
    RngKey files_key = replication_key.child(0);
    std::vector<FileTask> out;
    out.reserve(count);
    for (i64 k = 1; k <= count; ++k) {
        double size = f_max_mb * (1.0 - files_key.uniform(static_cast<u64>(k)));  // in (0, F_max]
        out.push_back(FileTask::from_mb(scenario, rat_from_decimal(size)));
    }
    return out;
}

}  // namespace osa
