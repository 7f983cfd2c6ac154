#include "sindex/config.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <stdexcept>

#include <json.hpp>

#include "sindex/embedding_client.hpp"

namespace sindex {

namespace {

using nlohmann::json;

const std::vector<std::string> kKnownMeasures = {"sindex", "cluster_entropy",
                                                 "naive_entropy"};

template <typename T>
void read_field(const json& j, const char* name, T& out) {
    if (!j.contains(name)) return;
    try {
        out = j.at(name).get<T>();
    } catch (const json::exception& e) {
        throw std::runtime_error("config field '" + std::string(name) + "': " + e.what());
    }
}

}  // namespace

Config load_config(const std::optional<std::filesystem::path>& file) {
    Config config;
    if (file) {
        std::ifstream in(*file);
        if (!in) {
            throw std::runtime_error("cannot open config file '" + file->string() + "'");
        }
        json j = json::parse(in, nullptr, false);
        if (j.is_discarded()) {
            throw std::runtime_error("config file '" + file->string() +
                                     "' is not valid JSON");
        }
        read_field(j, "separator", config.separator);
        read_field(j, "distance_threshold", config.distance_threshold);
        read_field(j, "label_threshold", config.label_threshold);
        read_field(j, "generations", config.generations);
        read_field(j, "endpoint", config.endpoint);
        read_field(j, "model_id", config.model_id);
        read_field(j, "measures", config.measures);
        read_field(j, "label_policy", config.label_policy);
        read_field(j, "seed", config.seed);
    }
    if (const char* env = std::getenv(kEndpointEnvVar); env != nullptr && *env != '\0') {
        config.endpoint = env;
    }
    validate(config);
    return config;
}

void validate(const Config& config) {
    if (!(config.distance_threshold >= 0.0 && config.distance_threshold <= 2.0)) {
        throw std::invalid_argument("config: distance_threshold must lie in [0, 2]");
    }
    if (!(config.label_threshold > -1.0 && config.label_threshold < 1.0)) {
        throw std::invalid_argument("config: label_threshold must lie in (-1, 1)");
    }
    if (config.generations == 0) {
        throw std::invalid_argument("config: generations must be positive");
    }
    if (config.model_id.empty()) {
        throw std::invalid_argument("config: model_id must be non-empty");
    }
    if (config.measures.empty()) {
        throw std::invalid_argument("config: measures must be non-empty");
    }
    for (const auto& m : config.measures) {
        if (std::find(kKnownMeasures.begin(), kKnownMeasures.end(), m) ==
            kKnownMeasures.end()) {
            throw std::invalid_argument("config: unknown measure '" + m + "'");
        }
    }
    policy_from_string(config.label_policy);
}

}  // namespace sindex
