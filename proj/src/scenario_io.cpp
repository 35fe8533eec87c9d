#include "osa/scenario_io.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace osa {

namespace {

using nlohmann::json;

double number_field(const json& obj, const char* field, bool required, double fallback) {
    if (!obj.contains(field)) {
        if (required) throw std::invalid_argument(std::string(field) + ": missing required field");
        return fallback;
    }
    if (!obj[field].is_number())
        throw std::invalid_argument(std::string(field) + ": expected a number");
    return obj[field].get<double>();
}

}  // namespace

Scenario load_scenario_json(const std::string& text, const std::string& name) {
    json root;
    try {
        root = json::parse(text);
    } catch (const json::parse_error& err) {
        throw std::invalid_argument("scenario config: " + std::string(err.what()));
    }
    if (!root.is_object()) throw std::invalid_argument("scenario config: expected a JSON object");

    ScenarioConfig config;
    config.name = name;
    config.slot_ms = number_field(root, "slot_ms", true, 0);
    config.switching_delay_ms = number_field(root, "switching_delay_ms", false, 0.0);
    config.quantum_mb = number_field(root, "quantum_mb", false, 0.001);

    if (!root.contains("channels") || !root["channels"].is_array() || root["channels"].empty())
        throw std::invalid_argument("channels: expected a non-empty array");
    for (const json& entry : root["channels"]) {
        if (!entry.is_object()) throw std::invalid_argument("channels: entries must be objects");
        Channel ch;
        if (!entry.contains("id") || !entry["id"].is_number_integer())
            throw std::invalid_argument("channels[].id: expected an integer");
        ch.id = entry["id"].get<int>();
        ch.rate_mbps = number_field(entry, "rate_mbps", true, 0);
        ch.misdetect = number_field(entry, "misdetect", false, 0.0);
        bool has_p = entry.contains("p");
        bool has_markov = entry.contains("q_up") || entry.contains("q_down") || entry.contains("c0");
        if (has_p == has_markov)
            throw std::invalid_argument("channel " + std::to_string(ch.id) +
                                        ": specify either p or (q_up, q_down, c0)");
        if (has_p) {
            ch.law = BernoulliLaw{number_field(entry, "p", true, 0)};
        } else {
            MarkovLaw law;
            law.q_up = number_field(entry, "q_up", true, 0);
            law.q_down = number_field(entry, "q_down", true, 0);
            law.initial_avail = number_field(entry, "c0", true, 0);
            ch.law = law;
        }
        config.channels.push_back(ch);
    }
    return Scenario::validate(config);
}

Scenario load_scenario_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("scenario: cannot open '" + path + "'");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    std::string name = path;
    if (auto slash = name.find_last_of('/'); slash != std::string::npos) name = name.substr(slash + 1);
    if (auto dot = name.find_last_of('.'); dot != std::string::npos) name = name.substr(0, dot);
    return load_scenario_json(buffer.str(), name);
}

namespace {

Scenario make_preset(const std::string& name, const std::vector<double>& probs) {
    static const std::vector<double> rates = {1.5, 4.5, 6, 9, 12, 18, 20, 23};
    ScenarioConfig config;
    config.name = name;
    config.slot_ms = 100;
    config.switching_delay_ms = 0;
    config.quantum_mb = 0.001;
    for (std::size_t i = 0; i < rates.size(); ++i)
        config.channels.push_back(
            {static_cast<int>(i + 1), rates[i], BernoulliLaw{probs[i]}, 0.0});
    return Scenario::validate(config);
}

}  // namespace

std::vector<std::string> preset_names() { return {"gradual", "steep", "lossy"}; }

bool is_preset(const std::string& name) {
    return name == "gradual" || name == "steep" || name == "lossy";
}

Scenario preset_scenario(const std::string& name) {
    if (name == "gradual")
        return make_preset(name, {0.95, 0.85, 0.75, 0.65, 0.4, 0.3, 0.2, 0.1});
    if (name == "steep")
        return make_preset(name, {0.9, 0.25, 0.2, 0.18, 0.17, 0.16, 0.15, 0.14});
    if (name == "lossy")
        return make_preset(name, {0.9, 0.8, 0.7, 0.4, 0.3, 0.25, 0.2, 0.1});
    throw std::invalid_argument("unknown preset '" + name + "' (gradual, steep, lossy)");
}

Scenario resolve_scenario(const std::string& name_or_path) {
    if (is_preset(name_or_path)) return preset_scenario(name_or_path);
    return load_scenario_file(name_or_path);
}

std::string scenario_to_json(const Scenario& scenario) {
    const ScenarioConfig& config = scenario.config();
    json root;
    root["slot_ms"] = config.slot_ms;
    root["switching_delay_ms"] = config.switching_delay_ms;
    root["quantum_mb"] = config.quantum_mb;
    root["channels"] = json::array();
    for (const Channel& ch : config.channels) {
        json entry;
        entry["id"] = ch.id;
        entry["rate_mbps"] = ch.rate_mbps;
        if (ch.is_bernoulli()) {
            entry["p"] = ch.bernoulli().avail_prob;
            if (ch.misdetect != 0) entry["misdetect"] = ch.misdetect;
        } else {
            entry["q_up"] = ch.markov().q_up;
            entry["q_down"] = ch.markov().q_down;
            entry["c0"] = ch.markov().initial_avail;
        }
        root["channels"].push_back(entry);
    }
    return root.dump(2);
}

}  // namespace osa
