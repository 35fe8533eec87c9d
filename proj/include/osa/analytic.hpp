#pragma once

#include <utility>
#include <vector>

#include "osa/model.hpp"
#include "osa/policy.hpp"

namespace osa {

struct ExpectedTime {
    Rat value;  // seconds, exact
    double seconds() const { return to_double(value); }
};

struct RatioBounds {
    Rat lower;  // in (0, 1]
    Rat upper;  // in (0, 1]
};

// Expected transfer time of the static policy on a Bernoulli channel:
// slot * (k/p + 1{alpha>0} (1-p)/p + alpha).
ExpectedTime static_expected_time(const Scenario& scenario, int channel_id, FileTask file);

// Gap between the static expected time and the Wald value F/(r p):
// slot * 1{alpha>0} (1-alpha)(1-p)/p, always >= 0.
ExpectedTime wald_gap(const Scenario& scenario, int channel_id, FileTask file);

// Channel maximizing r_i p_i'. Throws when the maximizer is not unique
// (the analysis assumes a unique max-throughput channel).
int max_throughput_channel(const Scenario& scenario);

// Tie-tolerant variant used by internal machinery: smallest id wins.
int max_throughput_index(const Scenario& scenario);

// Channel minimizing the static expected time; ties break to smallest id.
std::pair<int, ExpectedTime> static_optimal_channel(const Scenario& scenario, FileTask file);

// File-size threshold H (in Mb) above which the max-throughput channel is
// guaranteed static optimal. Requires >= 2 channels and a unique maximizer.
Rat threshold_mb(const Scenario& scenario);

// Upper bound on E[T(i_so,F)] / E[T(i*,F)] for F strictly between
// consecutive multiples of slot * r_{i*}; clipped to 1.
Rat static_ratio_upper_bound(const Scenario& scenario, FileTask file);

// Expected transfer time of a dynamic policy plan:
// slot * (sum_{n<|pi|} 1/p_n + (1-p_last)/p_last) + F_last/r_last.
ExpectedTime dynamic_expected_time(const PolicyPlan& plan, const Scenario& scenario);

// F / (r_{i*} p_{i*}): no feasible plan beats this.
ExpectedTime dynamic_lower_bound(const Scenario& scenario, FileTask file);

// Bounds on E[T(pi*,F)] / E[T(i*,F)] for F strictly between consecutive
// multiples of slot * r_{i*}.
RatioBounds dynamic_ratio_bounds(const Scenario& scenario, FileTask file);

// Expected static transfer time over a two-state Markov channel:
// slot * ((k + 1{alpha>0} - 1) q0/q1 + (1-c)/q1) + F/r.
ExpectedTime markov_static_expected_time(const Scenario& scenario, int channel_id, FileTask file);

// Extra expected time of the slower-mixing of two Markov channels that share
// rate, stationary law and initial state, with (q_i1, q_i0) = beta (q_j1, q_j0):
// slot (1-c) (1/q_i1 - 1/q_j1). Equals the difference of the two static
// Markov expected times.
ExpectedTime correlation_gap(const Scenario& scenario, int channel_i, int channel_j, FileTask file);

struct RegretBoundParams {
    int n_channels = 0;
    double horizon_len = 0;     // F_max / r_min
    double gap_min_s = 0;       // smallest non-zero suboptimality, seconds
    double longest_time_s = 0;  // D, longest expected transfer time, seconds
    std::vector<double> avail_probs;
    double s_const = 1.0;

    double p_min() const;
    double epsilon() const;  // (1 - 2^{-1/4}) gap_min / D
};

// f(K) = log K + 4 log log K (natural logs); requires K >= 3.
double regret_log_term(i64 k);

// Gap-dependent regret ceiling:
// 360 N H f(K) / (gap p_min^2) + 2 D (4 H + s sum_i 1/(eps^2 p_i^2)).
double regret_bound(const RegretBoundParams& params, i64 k);

// Exact kernels over already-effective probabilities. All channel-level
// entry points above delegate here, so evaluating a channel with
// misdetection v > 0 is identical to evaluating p(1-v) with v = 0.
Rat bernoulli_static_time_kernel(const Rat& avail, i64 full_slots, const Rat& alpha,
                                 const Rat& slot_seconds);
Rat markov_static_time_kernel(const Rat& q_up, const Rat& q_down, const Rat& initial_avail,
                              i64 full_slots, bool has_partial, const Rat& slot_seconds,
                              const Rat& transmit_seconds);

}  // namespace osa
