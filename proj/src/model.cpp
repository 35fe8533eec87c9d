#include "osa/model.hpp"

#include <set>
#include <stdexcept>

namespace osa {

namespace {

Rat prob_exact(double value) { return rat_from_decimal(value); }

}  // namespace

Rat effective_availability_exact(const Channel& channel) {
    if (!channel.is_bernoulli())
        throw std::invalid_argument("channel " + std::to_string(channel.id) +
                                    ": effective availability is defined for Bernoulli channels only");
    return prob_exact(channel.bernoulli().avail_prob) * (Rat(1) - prob_exact(channel.misdetect));
}

double effective_availability(const Channel& channel) {
    return to_double(effective_availability_exact(channel));
}

Scenario Scenario::validate(const ScenarioConfig& config) {
    auto data = std::make_shared<Data>();
    data->config = config;
    data->name = config.name;
    data->channels = config.channels;

    if (config.channels.empty()) throw std::invalid_argument("channels: at least one channel required");
    if (!(config.slot_ms > 0)) throw std::invalid_argument("slot_ms: must be positive");
    if (!(config.quantum_mb > 0)) throw std::invalid_argument("quantum_mb: must be positive");
    if (config.switching_delay_ms < 0)
        throw std::invalid_argument("switching_delay_ms: must be non-negative");
    if (!(config.switching_delay_ms < config.slot_ms))
        throw std::invalid_argument("switching_delay_ms: must be smaller than slot_ms");

    data->slot_seconds = rat_from_decimal(config.slot_ms) / 1000;
    data->quantum_mb = rat_from_decimal(config.quantum_mb);
    data->switching_delay_seconds = rat_from_decimal(config.switching_delay_ms) / 1000;

    std::set<int> ids;
    for (const Channel& ch : config.channels) {
        const std::string tag = "channel " + std::to_string(ch.id);
        if (!ids.insert(ch.id).second) throw std::invalid_argument(tag + ": duplicate channel id");
        if (!(ch.rate_mbps > 0)) throw std::invalid_argument(tag + ": rate_mbps must be positive");
        if (!(ch.misdetect >= 0 && ch.misdetect < 1))
            throw std::invalid_argument(tag + ": misdetect must lie in [0, 1)");

        if (ch.is_bernoulli()) {
            double p = ch.bernoulli().avail_prob;
            if (!(p > 0 && p <= 1)) throw std::invalid_argument(tag + ": p must lie in (0, 1]");
        } else {
            const MarkovLaw& law = ch.markov();
            if (!(law.q_up > 0 && law.q_up <= 1))
                throw std::invalid_argument(tag + ": q_up must lie in (0, 1]");
            if (!(law.q_down >= 0 && law.q_down < 1))
                throw std::invalid_argument(tag + ": q_down must lie in [0, 1)");
            if (!(law.initial_avail >= 0 && law.initial_avail <= 1))
                throw std::invalid_argument(tag + ": c0 must lie in [0, 1]");
            if (ch.misdetect != 0)
                throw std::invalid_argument(tag + ": misdetect is defined for Bernoulli channels only");
            data->all_bernoulli = false;
        }

        Rat rate = rat_from_decimal(ch.rate_mbps);
        Rat per_slot = data->slot_seconds * rate / data->quantum_mb;
        if (per_slot.get_den() != 1 || per_slot <= 0)
            throw std::invalid_argument(tag + ": quantum_mb does not divide slot_ms * rate_mbps (" +
                                        format_rat(per_slot) + " quanta per slot)");
        if (!per_slot.get_num().fits_slong_p())
            throw std::invalid_argument(tag + ": quanta per slot too large; increase quantum_mb");

        data->rate_exact.push_back(std::move(rate));
        data->slot_quanta.push_back(static_cast<i64>(per_slot.get_num().get_si()));
        if (ch.is_bernoulli()) {
            Rat p_eff = effective_availability_exact(ch);
            if (!(p_eff > 0))
                throw std::invalid_argument(tag + ": effective availability p(1-v) must stay positive");
            data->throughput.push_back(data->rate_exact.back() * p_eff);
            data->avail.push_back(std::move(p_eff));
        } else {
            data->avail.emplace_back(0);
            data->throughput.emplace_back(0);
        }
    }
    return Scenario(std::move(data));
}

Scenario validate_scenario(const ScenarioConfig& config) { return Scenario::validate(config); }

int Scenario::index_of(int channel_id) const {
    const auto& chans = data_->channels;
    for (std::size_t i = 0; i < chans.size(); ++i)
        if (chans[i].id == channel_id) return static_cast<int>(i);
    throw std::invalid_argument("unknown channel id " + std::to_string(channel_id));
}

const Rat& Scenario::avail_exact(int idx) const {
    if (!data_->channels[idx].is_bernoulli())
        throw std::invalid_argument("channel " + std::to_string(data_->channels[idx].id) +
                                    " is Markov; Bernoulli availability undefined");
    return data_->avail[idx];
}

const Rat& Scenario::throughput_exact(int idx) const {
    if (!data_->channels[idx].is_bernoulli())
        throw std::invalid_argument("channel " + std::to_string(data_->channels[idx].id) +
                                    " is Markov; Bernoulli throughput undefined");
    return data_->throughput[idx];
}

Scenario Scenario::with_availability(const std::vector<double>& avail) const {
    if (avail.size() != data_->channels.size())
        throw std::invalid_argument("availability vector size mismatch");
    ScenarioConfig config = data_->config;
    for (std::size_t i = 0; i < avail.size(); ++i) {
        if (!(avail[i] > 0 && avail[i] <= 1))
            throw std::invalid_argument("availability must lie in (0, 1]");
        config.channels[i].law = BernoulliLaw{avail[i]};
        config.channels[i].misdetect = 0.0;
    }
    return validate(config);
}

Scenario Scenario::with_switching_delay_ms(double delay_ms) const {
    ScenarioConfig config = data_->config;
    config.switching_delay_ms = delay_ms;
    return validate(config);
}

i64 Scenario::quanta_from_mb(const Rat& mb) const {
    if (!(mb > 0)) throw std::invalid_argument("file size must be positive");
    return ceil_to_i64(mb / data_->quantum_mb);
}

FileTask FileTask::from_quanta(i64 quanta) {
    if (quanta <= 0) throw std::invalid_argument("file size must be a positive number of quanta");
    return FileTask{quanta};
}

FileTask FileTask::from_mb(const Scenario& scenario, const Rat& mb) {
    return FileTask{scenario.quanta_from_mb(mb)};
}

SlotArithmetic slot_arithmetic(const Scenario& scenario, int channel_idx, i64 file_quanta) {
    if (file_quanta <= 0) throw std::invalid_argument("file size must be positive");
    SlotArithmetic out;
    out.full_slot_quanta = scenario.slot_quanta(channel_idx);
    out.full_slots = file_quanta / out.full_slot_quanta;
    out.remainder_quanta = file_quanta % out.full_slot_quanta;
    return out;
}

}  // namespace osa
