#include "osa/simulator.hpp"

#include <cmath>
#include <stdexcept>
#include <unordered_map>

#include "osa/optimizer.hpp"
#include "osa/parallel.hpp"

namespace osa {

Simulator::Simulator(Scenario scenario) : scenario_(std::move(scenario)) {
    slot_s_ = to_double(scenario_.slot_seconds());
    delay_s_ = to_double(scenario_.switching_delay_seconds());
    const int n = scenario_.channel_count();
    Rat usable = scenario_.slot_seconds() - scenario_.switching_delay_seconds();
    for (int idx = 0; idx < n; ++idx) {
        const Channel& ch = scenario_.channels()[idx];
        slot_quanta_.push_back(scenario_.slot_quanta(idx));
        // Whole quanta transmittable in the shortened window of a switch slot.
        switch_slot_quanta_.push_back(
            floor_to_i64(usable * scenario_.rate_mbps_exact(idx) / scenario_.quantum_mb()));
        sec_per_quantum_.push_back(to_double(scenario_.quantum_mb() / scenario_.rate_mbps_exact(idx)));
        if (ch.is_bernoulli()) {
            avail_.push_back(to_double(scenario_.avail_exact(idx)));
            is_markov_.push_back(false);
            q_up_.push_back(0);
            q_down_.push_back(0);
            c0_.push_back(0);
        } else {
            avail_.push_back(0);
            is_markov_.push_back(true);
            q_up_.push_back(ch.markov().q_up);
            q_down_.push_back(ch.markov().q_down);
            c0_.push_back(ch.markov().initial_avail);
            any_markov_ = true;
        }
    }
}

EpisodeTrace Simulator::run(const PolicyRule& rule, FileTask file, RngKey episode_key,
                            bool record_slots) const {
    const int n = scenario_.channel_count();
    EpisodeTrace trace;
    i64 remaining = file.quanta;
    int prev_sensed = -1;
    double final_duration = 0;

    // Markov chain state entering slot 1; draw (t, c) advances channel c
    // into slot t, so each pair is consumed at most once.
    std::vector<char> markov_state(any_markov_ ? n : 0, 0);
    if (any_markov_) {
        RngKey slot_key = episode_key.child(1);
        for (int c = 0; c < n; ++c)
            if (is_markov_[c]) markov_state[c] = slot_key.uniform(c) < c0_[c] ? 1 : 0;
    }

    while (remaining > 0) {
        ++trace.slots;
        const i64 t = trace.slots;
        int channel_id = rule.channel_for(remaining);
        int idx = scenario_.index_of(channel_id);
        bool switched = prev_sensed >= 0 && idx != prev_sensed;
        if (switched) ++trace.switches;

        bool available = is_markov_[idx] ? markov_state[idx] != 0
                                         : episode_key.child(t).uniform(idx) < avail_[idx];
        i64 transmitted = 0;
        if (available) {
            i64 cap = switched ? switch_slot_quanta_[idx] : slot_quanta_[idx];
            transmitted = std::min(remaining, cap);
            remaining -= transmitted;
            trace.transmitted_quanta += transmitted;
            if (remaining == 0)
                final_duration = (switched ? delay_s_ : 0.0) +
                                 static_cast<double>(transmitted) * sec_per_quantum_[idx];
        }
        if (record_slots) trace.records.push_back({t, channel_id, available, transmitted, switched});
        prev_sensed = idx;

        if (remaining > 0 && any_markov_) {
            RngKey slot_key = episode_key.child(t + 1);
            for (int c = 0; c < n; ++c) {
                if (!is_markov_[c]) continue;
                double u = slot_key.uniform(c);
                markov_state[c] = markov_state[c] ? (u < q_down_[c] ? 0 : 1)
                                                  : (u < q_up_[c] ? 1 : 0);
            }
        }
    }
    trace.total_time_s = static_cast<double>(trace.slots - 1) * slot_s_ + final_duration;
    return trace;
}

EpisodeTrace simulate_episode(const Scenario& scenario, const PolicyRule& rule, FileTask file,
                              RngKey episode_key, bool record_slots) {
    return Simulator(scenario).run(rule, file, episode_key, record_slots);
}

MetricsReport compute_metrics(const std::vector<EpisodeSummary>& episodes,
                              const Scenario& scenario) {
    if (episodes.empty()) throw std::invalid_argument("compute_metrics: no episodes");
    int star = max_throughput_channel(scenario);
    std::unordered_map<i64, double> denom;
    MetricsReport report;
    report.episodes = static_cast<i64>(episodes.size());
    for (const EpisodeSummary& ep : episodes) {
        auto it = denom.find(ep.file.quanta);
        if (it == denom.end())
            it = denom.emplace(ep.file.quanta,
                               static_expected_time(scenario, star, ep.file).seconds()).first;
        report.avg_time_ratio += ep.time_s / it->second;
        report.avg_throughput_mbps += to_double(ep.file.mb(scenario)) / ep.time_s;
    }
    report.avg_time_ratio /= static_cast<double>(report.episodes);
    report.avg_throughput_mbps /= static_cast<double>(report.episodes);
    return report;
}

std::vector<OfflineRow> run_offline_experiment(const Scenario& scenario,
                                               const std::vector<PolicyKind>& kinds,
                                               const std::vector<FileTask>& grid,
                                               const SimConfig& config) {
    if (grid.empty()) throw std::invalid_argument("run_offline_experiment: empty file grid");
    Scenario sim_scenario = config.switching_delay_ms
                                ? scenario.with_switching_delay_ms(*config.switching_delay_ms)
                                : scenario;
    Simulator simulator(sim_scenario);
    int star = max_throughput_channel(scenario);
    RngKey root{config.seed};

    std::vector<OfflineRow> rows(kinds.size() * grid.size());
    // Analytic pass (cheap except dynamic-opt solves, which parallelize
    // across the grid).
    parallel_for(grid.size(), [&](std::size_t g) {
        FileTask file = grid[g];
        double denom = static_expected_time(scenario, star, file).seconds();
        for (std::size_t k = 0; k < kinds.size(); ++k) {
            OfflineRow& row = rows[k * grid.size() + g];
            row.kind = kinds[k];
            row.file_mb = file.mb(scenario);
            switch (kinds[k].type) {
                case PolicyKind::Type::StaticChannel:
                    row.analytic_s =
                        static_expected_time(scenario, kinds[k].channel_id, file).seconds();
                    break;
                case PolicyKind::Type::StaticOpt:
                    row.analytic_s = static_optimal_channel(scenario, file).second.seconds();
                    break;
                case PolicyKind::Type::MaxThroughput:
                    row.analytic_s = denom;
                    break;
                case PolicyKind::Type::Heuristic:
                    row.analytic_s = heuristic_policy(scenario, file).second.seconds();
                    break;
                case PolicyKind::Type::DynamicOpt:
                    row.analytic_s = solve_mip(scenario, file).first.objective.seconds();
                    break;
            }
            row.analytic_ratio = row.analytic_s / denom;
        }
    });

    if (config.replications > 0) {
        for (std::size_t k = 0; k < kinds.size(); ++k) {
            for (std::size_t g = 0; g < grid.size(); ++g) {
                OfflineRow& row = rows[k * grid.size() + g];
                FileTask file = grid[g];
                PolicyRule rule = make_rule(scenario, kinds[k], file);
                std::vector<double> times(config.replications);
                parallel_for(times.size(), [&](std::size_t rep) {
                    // Environment key excludes the policy kind and the
                    // switching delay: paired comparisons by construction.
                    RngKey key = root.child(rep).child(g);
                    times[rep] = simulator.run(rule, file, key).total_time_s;
                });
                double sum = 0, sumsq = 0;
                for (double t : times) {
                    sum += t;
                    sumsq += t * t;
                }
                double n = static_cast<double>(times.size());
                row.replications = config.replications;
                row.sim_mean_s = sum / n;
                double var = n > 1 ? (sumsq - sum * sum / n) / (n - 1) : 0.0;
                row.sim_se_s = n > 1 ? std::sqrt(std::max(0.0, var) / n) : 0.0;
                double denom = static_expected_time(scenario, star, file).seconds();
                row.sim_ratio = row.sim_mean_s / denom;
            }
        }
    }

    // Cumulative grid-prefix averages per kind.
    for (std::size_t k = 0; k < kinds.size(); ++k) {
        double acc_analytic = 0, acc_measured = 0;
        for (std::size_t g = 0; g < grid.size(); ++g) {
            OfflineRow& row = rows[k * grid.size() + g];
            acc_analytic += row.analytic_ratio;
            row.cum_avg_ratio_analytic = acc_analytic / static_cast<double>(g + 1);
            if (config.replications > 0) {
                acc_measured += row.sim_ratio;
                row.cum_avg_ratio_measured = acc_measured / static_cast<double>(g + 1);
            }
        }
    }
    return rows;
}

}  // namespace osa
