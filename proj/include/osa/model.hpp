#pragma once

#include <memory>
#include <string>
#include <variant>
#include <vector>

#include "osa/rational.hpp"

namespace osa {

// Availability is an i.i.d. draw per slot with probability avail_prob.
struct BernoulliLaw {
    double avail_prob = 1.0;  // p in (0, 1]
};

// Two-state chain advanced once per slot: busy->idle with q_up,
// idle->busy with q_down. initial_avail is the idle probability at the
// first sensing instant.
struct MarkovLaw {
    double q_up = 1.0;        // (0, 1]
    double q_down = 0.0;      // [0, 1)
    double initial_avail = 1.0;
};

struct Channel {
    int id = 0;
    double rate_mbps = 0.0;
    std::variant<BernoulliLaw, MarkovLaw> law = BernoulliLaw{};
    double misdetect = 0.0;  // v in [0, 1), Bernoulli channels only

    bool is_bernoulli() const { return std::holds_alternative<BernoulliLaw>(law); }
    const BernoulliLaw& bernoulli() const { return std::get<BernoulliLaw>(law); }
    const MarkovLaw& markov() const { return std::get<MarkovLaw>(law); }
};

struct ScenarioConfig {
    std::string name = "custom";
    double slot_ms = 100.0;
    double switching_delay_ms = 0.0;
    double quantum_mb = 0.001;
    std::vector<Channel> channels;
};

// Immutable validated scenario. File sizes are handled internally as integer
// multiples of the quantum so that every full slot transfers an exact
// integer amount and solver state spaces stay exact. Cheap to copy and safe
// to share across threads.
class Scenario {
public:
    // Checks every invariant: unique ids, positive rates, probability
    // ranges, switching delay < slot, and exact divisibility of every
    // slot * rate by the quantum. Throws std::invalid_argument naming the
    // offending field.
    static Scenario validate(const ScenarioConfig& config);

    const std::string& name() const { return data_->name; }
    const std::vector<Channel>& channels() const { return data_->channels; }
    int channel_count() const { return static_cast<int>(data_->channels.size()); }

    int index_of(int channel_id) const;           // throws on unknown id
    const Channel& channel_by_id(int channel_id) const { return channels()[index_of(channel_id)]; }

    const Rat& slot_seconds() const { return data_->slot_seconds; }
    const Rat& quantum_mb() const { return data_->quantum_mb; }
    const Rat& switching_delay_seconds() const { return data_->switching_delay_seconds; }

    // Full-slot transfer amount of channel idx, in quanta (slot * rate / quantum).
    i64 slot_quanta(int idx) const { return data_->slot_quanta[idx]; }
    const Rat& rate_mbps_exact(int idx) const { return data_->rate_exact[idx]; }
    // Effective availability p' = p (1 - v); Bernoulli channels only.
    const Rat& avail_exact(int idx) const;
    bool all_bernoulli() const { return data_->all_bernoulli; }

    // Throughput r_i * p_i' in Mb/s; Bernoulli channels only.
    const Rat& throughput_exact(int idx) const;

    // Same channels with Bernoulli availability replaced per channel index;
    // misdetection is folded away (the replacement is already effective).
    Scenario with_availability(const std::vector<double>& avail) const;

    // Same scenario with a different switching delay (milliseconds).
    Scenario with_switching_delay_ms(double delay_ms) const;

    i64 quanta_from_mb(const Rat& mb) const;  // rounds up, never under-transmits
    Rat mb_from_quanta(i64 quanta) const { return quanta * data_->quantum_mb; }

    const ScenarioConfig& config() const { return data_->config; }

private:
    struct Data {
        ScenarioConfig config;
        std::string name;
        std::vector<Channel> channels;
        Rat slot_seconds;
        Rat quantum_mb;
        Rat switching_delay_seconds;
        std::vector<i64> slot_quanta;
        std::vector<Rat> rate_exact;
        std::vector<Rat> avail;       // effective availability, Bernoulli only
        std::vector<Rat> throughput;  // r * p', Bernoulli only
        bool all_bernoulli = true;
    };
    explicit Scenario(std::shared_ptr<const Data> data) : data_(std::move(data)) {}
    std::shared_ptr<const Data> data_;
};

// File size as a positive integer count of quanta.
struct FileTask {
    i64 quanta = 0;

    static FileTask from_quanta(i64 quanta);
    // Physical size rounded up to the nearest quantum.
    static FileTask from_mb(const Scenario& scenario, const Rat& mb);
    static FileTask from_mb(const Scenario& scenario, double mb) {
        return from_mb(scenario, rat_from_decimal(mb));
    }

    Rat mb(const Scenario& scenario) const { return scenario.mb_from_quanta(quanta); }
};

// Full-slot count and final-slot fraction of a file on one channel:
// size = (full_slots + alpha) * slot_quanta exactly.
struct SlotArithmetic {
    i64 full_slot_quanta = 0;
    i64 full_slots = 0;        // k
    i64 remainder_quanta = 0;  // size - k * full_slot_quanta

    Rat alpha() const { return make_rat(remainder_quanta, full_slot_quanta); }
    bool has_partial() const { return remainder_quanta > 0; }
};

SlotArithmetic slot_arithmetic(const Scenario& scenario, int channel_idx, i64 file_quanta);

Scenario validate_scenario(const ScenarioConfig& config);

// p' = p (1 - v). Defined for Bernoulli channels only; throws on Markov.
double effective_availability(const Channel& channel);
Rat effective_availability_exact(const Channel& channel);

}  // namespace osa
