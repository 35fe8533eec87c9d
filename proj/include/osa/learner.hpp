#pragma once

#include <mutex>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "osa/model.hpp"
#include "osa/policy.hpp"
#include "osa/rng.hpp"

namespace osa {

// Optimistic availability estimate: the largest q in [mean, 1] with
// n * kl(mean, q) <= log k + 4 log log k, computed by bisection to 1e-9.
// n = 0 returns 1 (nothing observed, full optimism). Requires k >= 3.
double kl_index(double mean, i64 n, i64 k);

// Bernoulli KL divergence kl(p, q) with the usual 0 log 0 = 0 conventions.
double bernoulli_kl(double p, double q);

// Per-channel sensing counts and empirical availability means.
struct LearnerState {
    std::vector<i64> counts;
    std::vector<double> means;
    i64 episode = 0;

    explicit LearnerState(int n_channels)
        : counts(n_channels, 0), means(n_channels, 0.0) {}

    void observe(int channel_idx, bool available) {
        i64& n = counts[channel_idx];
        ++n;
        means[channel_idx] += ((available ? 1.0 : 0.0) - means[channel_idx]) /
                              static_cast<double>(n);
    }
};

struct EpisodeRecord {
    i64 episode = 0;  // 1-based
    FileTask file;
    std::string chosen_summary;
    double time_s = 0;
    i64 slots = 0;
    i64 switches = 0;
    double chosen_true_s = 0;    // E[T(pi^k, F^k)] under the true parameters
    double target_true_s = 0;    // E[T(pi_tar(F^k), F^k)] under the true parameters
    double baseline_true_s = 0;  // E[T(i*, F^k)], the average-time-ratio denominator
};

struct OnlineRunResult {
    PolicyKind kind;
    std::vector<EpisodeRecord> episodes;
    std::vector<double> avg_time_ratio;   // running average time ratio
    std::vector<double> avg_throughput;   // running average throughput, Mb/s
    LearnerState final_state{0};
};

struct OnlineConfig {
    RngKey replication_key;  // derive from the root seed per replication
    std::optional<double> switching_delay_ms;
    double clamp_min = 1e-6;  // closed forms divide by the availability

    // Pre-seeded observations (e.g. exactly known availabilities through a
    // huge count). When every channel already carries an observation the
    // warm-up episodes are skipped; warm-up only exists to cover each
    // channel once.
    std::optional<LearnerState> prior;
};

// Shared true-parameter evaluations (max-throughput baseline and the target
// policy optimum per file size); thread-safe, reusable across replications.
class OnlineContext {
public:
    OnlineContext(Scenario truth, PolicyKind kind);

    const Scenario& truth() const { return truth_; }
    const PolicyKind& kind() const { return kind_; }
    int max_throughput_id() const { return star_id_; }

    double baseline_true(FileTask file) const;  // E[T(i*, F)]
    double target_true(FileTask file) const;    // E[T(pi_tar(F), F)]

private:
    Scenario truth_;
    PolicyKind kind_;
    int star_id_;
    mutable std::mutex mutex_;
    mutable std::unordered_map<i64, double> baseline_, target_;
};

// Algorithm: warm up with one static episode per channel, then per episode
// compute KL indices from the observations so far, solve the chosen policy
// kind under the optimistic availabilities, and execute it on the true
// channels, observing one availability sample per slot for the sensed
// channel.
OnlineRunResult run_algorithm1(const Scenario& truth, const PolicyKind& kind,
                               const std::vector<FileTask>& files, const OnlineConfig& config,
                               const OnlineContext* shared = nullptr);

// Cumulative regret curve: prefix sums of chosen_true - target_true.
std::vector<double> empirical_regret(const OnlineRunResult& result);

// File sizes uniform on (0, F_max], rounded up to the quantum; one list per
// replication, independent of the policy kind under the same key.
std::vector<FileTask> draw_file_sizes(const Scenario& scenario, RngKey replication_key,
                                      i64 count, double f_max_mb);

}  // namespace osa
