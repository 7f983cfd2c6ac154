#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "sindex/clustering.hpp"
#include "sindex/core.hpp"
#include "sindex/labeling.hpp"

namespace sindex {

struct Config {
    std::string separator = std::string(kDefaultSeparator);
    double distance_threshold = kDefaultDistanceThreshold;
    double label_threshold = kDefaultLabelThreshold;
    std::size_t generations = 10;
    std::string endpoint;  // empty = offline
    std::string model_id = "all-MiniLM-L6-v2";
    std::vector<std::string> measures = {"sindex", "cluster_entropy", "naive_entropy"};
    std::string label_policy = "majority";
    std::uint64_t seed = 42;
};

// Defaults, overlaid by the optional JSON config file, overlaid by the
// endpoint environment variable. Flag handling sits above this in the CLI,
// so flags win over all three.
Config load_config(const std::optional<std::filesystem::path>& file);

void validate(const Config& config);

}  // namespace sindex
