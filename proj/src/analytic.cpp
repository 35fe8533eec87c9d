#include "osa/analytic.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace osa {

namespace {

void require_bernoulli(const Scenario& scenario, int idx, const char* what) {
    if (!scenario.channels()[idx].is_bernoulli())
        throw std::invalid_argument(std::string(what) + ": channel " +
                                    std::to_string(scenario.channels()[idx].id) +
                                    " is Markov (use markov_static_expected_time)");
}

void require_markov(const Scenario& scenario, int idx, const char* what) {
    if (scenario.channels()[idx].is_bernoulli())
        throw std::invalid_argument(std::string(what) + ": channel " +
                                    std::to_string(scenario.channels()[idx].id) +
                                    " is Bernoulli (use static_expected_time)");
}

// i* and k = floor(F / (slot r_{i*})), rejecting exact multiples where the
// ratio bounds are undefined.
std::pair<int, i64> bound_context(const Scenario& scenario, FileTask file, const char* what) {
    int star = max_throughput_channel(scenario);
    int star_idx = scenario.index_of(star);
    i64 w_star = scenario.slot_quanta(star_idx);
    if (file.quanta % w_star == 0)
        throw std::invalid_argument(std::string(what) +
                                    ": file size is an exact multiple of slot * r_{i*}; the ratio "
                                    "is 1 there and the bound is undefined");
    return {star_idx, file.quanta / w_star};
}

}  // namespace

Rat bernoulli_static_time_kernel(const Rat& avail, i64 full_slots, const Rat& alpha,
                                 const Rat& slot_seconds) {
    Rat body = Rat(full_slots) / avail;
    if (alpha > 0) body += (1 - avail) / avail;
    body += alpha;
    return slot_seconds * body;
}

ExpectedTime static_expected_time(const Scenario& scenario, int channel_id, FileTask file) {
    int idx = scenario.index_of(channel_id);
    require_bernoulli(scenario, idx, "static_expected_time");
    SlotArithmetic arith = slot_arithmetic(scenario, idx, file.quanta);
    return {bernoulli_static_time_kernel(scenario.avail_exact(idx), arith.full_slots, arith.alpha(),
                                         scenario.slot_seconds())};
}

ExpectedTime wald_gap(const Scenario& scenario, int channel_id, FileTask file) {
    int idx = scenario.index_of(channel_id);
    require_bernoulli(scenario, idx, "wald_gap");
    ExpectedTime total = static_expected_time(scenario, channel_id, file);
    Rat wald = file.mb(scenario) / scenario.throughput_exact(idx);
    return {total.value - wald};
}

int max_throughput_index(const Scenario& scenario) {
    int best = 0;
    for (int i = 1; i < scenario.channel_count(); ++i)
        if (scenario.throughput_exact(i) > scenario.throughput_exact(best)) best = i;
    return best;
}

int max_throughput_channel(const Scenario& scenario) {
    int best = max_throughput_index(scenario);
    std::string tied;
    for (int i = 0; i < scenario.channel_count(); ++i) {
        if (i == best || scenario.throughput_exact(i) != scenario.throughput_exact(best)) continue;
        tied += tied.empty() ? "" : ",";
        tied += std::to_string(scenario.channels()[i].id);
    }
    if (!tied.empty())
        throw std::invalid_argument("max-throughput channel is not unique: channels " +
                                    std::to_string(scenario.channels()[best].id) + "," + tied +
                                    " share r*p = " + format_rat(scenario.throughput_exact(best)));
    return scenario.channels()[best].id;
}

std::pair<int, ExpectedTime> static_optimal_channel(const Scenario& scenario, FileTask file) {
    int best_id = -1;
    Rat best_value;
    for (const Channel& ch : scenario.channels()) {
        Rat value = static_expected_time(scenario, ch.id, file).value;
        if (best_id < 0 || value < best_value || (value == best_value && ch.id < best_id)) {
            best_id = ch.id;
            best_value = std::move(value);
        }
    }
    return {best_id, {best_value}};
}

Rat threshold_mb(const Scenario& scenario) {
    if (scenario.channel_count() < 2)
        throw std::invalid_argument("threshold_mb: needs at least two channels");
    int star = scenario.index_of(max_throughput_channel(scenario));
    int second = -1;
    for (int i = 0; i < scenario.channel_count(); ++i) {
        if (i == star) continue;
        if (second < 0 || scenario.throughput_exact(i) > scenario.throughput_exact(second))
            second = i;
    }
    Rat numerator = scenario.slot_seconds() * (1 - scenario.avail_exact(star)) /
                    scenario.avail_exact(star);
    Rat denominator = Rat(1) / scenario.throughput_exact(second) -
                      Rat(1) / scenario.throughput_exact(star);
    return numerator / denominator;
}

Rat static_ratio_upper_bound(const Scenario& scenario, FileTask file) {
    auto [star_idx, k] = bound_context(scenario, file, "static_ratio_upper_bound");
    const Rat& p_star = scenario.avail_exact(star_idx);
    Rat best(1);
    if (p_star == 1) return best;  // denominator vanishes; bound degenerates to 1
    Rat denom = Rat(k + 1) * (Rat(1) / p_star - 1);
    Rat file_mb = file.mb(scenario);
    for (int i = 0; i < scenario.channel_count(); ++i) {
        if (i == star_idx) continue;
        const Rat& p = scenario.avail_exact(i);
        Rat numer = file_mb / (scenario.slot_seconds() * scenario.rate_mbps_exact(i) * p) +
                    (1 - p) / p;
        Rat bound = numer / denom;
        if (bound < best) best = std::move(bound);
    }
    return best;
}

ExpectedTime dynamic_expected_time(const PolicyPlan& plan, const Scenario& scenario) {
    // Linearize into (channel idx, amount) transmissions; only the last one
    // may be partial.
    int last_idx = -1;
    i64 last_quanta = 0;
    Rat waits(0);
    i64 transmissions = 0;
    for (const PlanSegment& seg : plan.segments) {
        if (seg.slots < 0) throw std::invalid_argument("plan segment with negative slot count");
        if (seg.slots == 0) continue;
        int idx = scenario.index_of(seg.channel_id);
        require_bernoulli(scenario, idx, "dynamic_expected_time");
        waits += Rat(seg.slots) / scenario.avail_exact(idx);
        last_idx = idx;
        last_quanta = scenario.slot_quanta(idx);
        transmissions += seg.slots;
    }
    if (plan.final_segment) {
        int idx = scenario.index_of(plan.final_segment->channel_id);
        require_bernoulli(scenario, idx, "dynamic_expected_time");
        if (plan.final_segment->quanta <= 0 ||
            plan.final_segment->quanta > scenario.slot_quanta(idx))
            throw std::invalid_argument("final transmission must lie in (0, slot * r] quanta");
        waits += Rat(1) / scenario.avail_exact(idx);
        last_idx = idx;
        last_quanta = plan.final_segment->quanta;
        ++transmissions;
    }
    if (transmissions == 0) throw std::invalid_argument("plan transmits nothing");

    // The last transmission was charged slot/p above; recharge it as
    // slot (1-p)/p + amount/r.
    Rat value = scenario.slot_seconds() * waits;
    value -= scenario.slot_seconds() / scenario.avail_exact(last_idx);
    value += scenario.slot_seconds() * (1 - scenario.avail_exact(last_idx)) /
             scenario.avail_exact(last_idx);
    value += scenario.mb_from_quanta(last_quanta) / scenario.rate_mbps_exact(last_idx);
    return {value};
}

ExpectedTime dynamic_lower_bound(const Scenario& scenario, FileTask file) {
    Rat best = scenario.throughput_exact(0);
    for (int i = 1; i < scenario.channel_count(); ++i)
        if (scenario.throughput_exact(i) > best) best = scenario.throughput_exact(i);
    return {file.mb(scenario) / best};
}

RatioBounds dynamic_ratio_bounds(const Scenario& scenario, FileTask file) {
    auto [star_idx, k] = bound_context(scenario, file, "dynamic_ratio_bounds");
    const Rat& p_star = scenario.avail_exact(star_idx);
    Rat file_mb = file.mb(scenario);

    RatioBounds out;
    out.lower = file_mb / (file_mb + scenario.slot_seconds() * (1 - p_star) *
                                         scenario.rate_mbps_exact(star_idx));
    out.upper = 1;
    if (p_star == 1) return out;

    const Rat& tp_star = scenario.throughput_exact(star_idx);
    for (int i = 0; i < scenario.channel_count(); ++i) {
        if (i == star_idx) continue;
        const Rat& p = scenario.avail_exact(i);
        Rat m = p / p_star;
        const Rat& tp = scenario.throughput_exact(i);
        Rat numer = file_mb / (scenario.slot_seconds() * scenario.rate_mbps_exact(i)) + 1 - p -
                    Rat(k) * m * (tp_star - tp) / tp;
        Rat denom = Rat(k + 1) * (m - p);
        Rat bound = numer / denom;
        if (bound < out.upper) out.upper = std::move(bound);
    }
    return out;
}

Rat markov_static_time_kernel(const Rat& q_up, const Rat& q_down, const Rat& initial_avail,
                              i64 full_slots, bool has_partial, const Rat& slot_seconds,
                              const Rat& transmit_seconds) {
    i64 transmissions = full_slots + (has_partial ? 1 : 0);
    Rat body = Rat(transmissions - 1) * q_down / q_up + (1 - initial_avail) / q_up;
    return slot_seconds * body + transmit_seconds;
}

ExpectedTime markov_static_expected_time(const Scenario& scenario, int channel_id, FileTask file) {
    int idx = scenario.index_of(channel_id);
    require_markov(scenario, idx, "markov_static_expected_time");
    const MarkovLaw& law = scenario.channels()[idx].markov();
    SlotArithmetic arith = slot_arithmetic(scenario, idx, file.quanta);
    Rat transmit = file.mb(scenario) / scenario.rate_mbps_exact(idx);
    return {markov_static_time_kernel(rat_from_decimal(law.q_up), rat_from_decimal(law.q_down),
                                      rat_from_decimal(law.initial_avail), arith.full_slots,
                                      arith.has_partial(), scenario.slot_seconds(), transmit)};
}

ExpectedTime correlation_gap(const Scenario& scenario, int channel_i, int channel_j,
                             FileTask file) {
    int i = scenario.index_of(channel_i);
    int j = scenario.index_of(channel_j);
    require_markov(scenario, i, "correlation_gap");
    require_markov(scenario, j, "correlation_gap");
    const MarkovLaw& li = scenario.channels()[i].markov();
    const MarkovLaw& lj = scenario.channels()[j].markov();

    Rat qi1 = rat_from_decimal(li.q_up), qi0 = rat_from_decimal(li.q_down);
    Rat qj1 = rat_from_decimal(lj.q_up), qj0 = rat_from_decimal(lj.q_down);
    Rat ci = rat_from_decimal(li.initial_avail), cj = rat_from_decimal(lj.initial_avail);

    if (scenario.rate_mbps_exact(i) != scenario.rate_mbps_exact(j))
        throw std::invalid_argument("correlation_gap: channels must share the same rate");
    if (ci != cj)
        throw std::invalid_argument("correlation_gap: channels must share the initial state law");
    if (qi1 / (qi1 + qi0) != qj1 / (qj1 + qj0))
        throw std::invalid_argument("correlation_gap: channels must share the stationary law");
    // (q_i1, q_i0) = beta (q_j1, q_j0) with beta in (0, 1]
    Rat beta = qi1 / qj1;
    if (qi0 != beta * qj0 || beta > 1 || beta <= 0)
        throw std::invalid_argument(
            "correlation_gap: transition probabilities must scale by a common beta in (0, 1]");

    (void)file;  // the gap is independent of the file size; see the identity test
    Rat gap = scenario.slot_seconds() * (1 - ci) * (Rat(1) / qi1 - Rat(1) / qj1);
    return {gap};
}

double RegretBoundParams::p_min() const {
    double out = 1.0;
    for (double p : avail_probs) out = std::min(out, p);
    return out;
}

double RegretBoundParams::epsilon() const {
    return (1.0 - std::pow(2.0, -0.25)) * gap_min_s / longest_time_s;
}

double regret_log_term(i64 k) {
    if (k < 3) throw std::invalid_argument("regret_log_term: needs K >= 3");
    double logk = std::log(static_cast<double>(k));
    return logk + 4.0 * std::log(logk);
}

double regret_bound(const RegretBoundParams& params, i64 k) {
    if (params.n_channels <= 0 || params.avail_probs.empty() || params.horizon_len <= 0 ||
        params.gap_min_s <= 0 || params.longest_time_s <= 0 || params.s_const <= 0)
        throw std::invalid_argument("regret_bound: all parameters must be positive");
    double f = regret_log_term(k);
    double pmin = params.p_min();
    double first = 360.0 * params.n_channels * params.horizon_len * f /
                   (params.gap_min_s * pmin * pmin);
    double eps = params.epsilon();
    double sum = 0;
    for (double p : params.avail_probs) sum += 1.0 / (eps * eps * p * p);
    double second = 2.0 * params.longest_time_s * (4.0 * params.horizon_len + params.s_const * sum);
    return first + second;
}

}  // namespace osa
