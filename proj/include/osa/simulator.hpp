#pragma once

#include <optional>
#include <vector>

#include "osa/analytic.hpp"
#include "osa/model.hpp"
#include "osa/policy.hpp"
#include "osa/rng.hpp"

namespace osa {

struct SimConfig {
    u64 seed = 1;
    i64 replications = 1;
    std::optional<double> switching_delay_ms;  // overrides the scenario value
};

struct SlotRecord {
    i64 index = 0;  // 1-based
    int channel_id = 0;
    bool available = false;
    i64 transmitted_quanta = 0;
    bool switched = false;  // sensed channel differs from the previous slot
};

struct EpisodeTrace {
    i64 slots = 0;
    i64 switches = 0;
    i64 transmitted_quanta = 0;
    double total_time_s = 0;  // (slots - 1) * slot + final partial duration
    std::vector<SlotRecord> records;  // filled only when requested
};

// Slot-level executor for one (scenario, switching delay) pair. Channel
// availability is drawn per (slot, channel) from the episode key: Bernoulli
// channels draw lazily when sensed, Markov chains advance every slot whether
// sensed or not. The environment never depends on the policy.
class Simulator {
public:
    explicit Simulator(Scenario scenario);

    EpisodeTrace run(const PolicyRule& rule, FileTask file, RngKey episode_key,
                     bool record_slots = false) const;

    const Scenario& scenario() const { return scenario_; }

private:
    Scenario scenario_;
    double slot_s_;
    double delay_s_;
    std::vector<double> avail_;          // Bernoulli effective availability
    std::vector<i64> slot_quanta_;
    std::vector<i64> switch_slot_quanta_;  // floor((slot - delay) * r / quantum)
    std::vector<double> sec_per_quantum_;
    std::vector<bool> is_markov_;
    std::vector<double> q_up_, q_down_, c0_;
    bool any_markov_ = false;
};

EpisodeTrace simulate_episode(const Scenario& scenario, const PolicyRule& rule, FileTask file,
                              RngKey episode_key, bool record_slots = false);

struct EpisodeSummary {
    FileTask file;
    double time_s = 0;
};

struct MetricsReport {
    i64 episodes = 0;
    double avg_time_ratio = 0;       // mean of T_k / E[T(i*, F_k)]
    double avg_throughput_mbps = 0;  // mean of F_k / T_k
};

// Ratio denominators are the analytic max-throughput expectations under the
// scenario's true parameters.
MetricsReport compute_metrics(const std::vector<EpisodeSummary>& episodes,
                              const Scenario& scenario);

struct OfflineRow {
    PolicyKind kind;
    Rat file_mb;
    double analytic_s = 0;             // switching delay excluded (closed forms)
    double analytic_ratio = 0;         // analytic_s / E[T(i*, F)]
    double cum_avg_ratio_analytic = 0; // prefix mean of analytic_ratio over the grid
    i64 replications = 0;
    double sim_mean_s = 0;
    double sim_se_s = 0;
    double sim_ratio = 0;              // sim_mean_s / E[T(i*, F)]
    double cum_avg_ratio_measured = 0;
};

// Analytic expectations for every (F, kind) on the grid, plus Monte-Carlo
// means when replications > 0. The per-seed environment is shared across
// kinds, so rows are paired comparisons.
std::vector<OfflineRow> run_offline_experiment(const Scenario& scenario,
                                               const std::vector<PolicyKind>& kinds,
                                               const std::vector<FileTask>& grid,
                                               const SimConfig& config);

}  // namespace osa
