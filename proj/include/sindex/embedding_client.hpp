#pragma once

#include <string>
#include <vector>

namespace sindex {

inline constexpr const char* kEndpointEnvVar = "SINDEX_EMBED_ENDPOINT";

struct EmbeddingServiceConfig {
    std::string endpoint;  // e.g. http://127.0.0.1:8900/embed
    std::string model_id;
    std::size_t max_batch = 64;
    int max_attempts = 3;
    int backoff_ms = 100;  // doubles after each failed attempt
    int timeout_s = 30;
};

// Client for the embedding service: POST {"model": ..., "inputs": [...]},
// response {"vectors": [[...]]}, order preserving. Failed requests retry
// with exponential backoff up to max_attempts.
class EmbeddingClient {
public:
    explicit EmbeddingClient(EmbeddingServiceConfig config);

    std::vector<std::vector<double>> embed(const std::vector<std::string>& inputs);

    const EmbeddingServiceConfig& config() const { return config_; }

private:
    EmbeddingServiceConfig config_;
    std::string base_url_;
    std::string path_;

    std::vector<std::vector<double>> embed_batch(const std::vector<std::string>& batch);
};

}  // namespace sindex
