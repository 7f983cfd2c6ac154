#include "sindex/embedding_client.hpp"

#include <chrono>
#include <stdexcept>
#include <thread>

#include <httplib.h>
#include <json.hpp>

namespace sindex {

namespace {

using nlohmann::json;

}  // namespace

EmbeddingClient::EmbeddingClient(EmbeddingServiceConfig config)
    : config_(std::move(config)) {
    const std::string& url = config_.endpoint;
    const auto scheme_end = url.find("://");
    if (scheme_end == std::string::npos || url.substr(0, scheme_end) != "http") {
        throw std::invalid_argument("embedding endpoint must be an http:// URL, got '" +
                                    url + "'");
    }
    const auto path_start = url.find('/', scheme_end + 3);
    if (path_start == std::string::npos) {
        base_url_ = url;
        path_ = "/";
    } else {
        base_url_ = url.substr(0, path_start);
        path_ = url.substr(path_start);
    }
    if (config_.max_attempts < 1) {
        throw std::invalid_argument("embedding client: max_attempts must be >= 1");
    }
    if (config_.max_batch == 0) {
        throw std::invalid_argument("embedding client: max_batch must be >= 1");
    }
}

std::vector<std::vector<double>> EmbeddingClient::embed(
    const std::vector<std::string>& inputs) {
    std::vector<std::vector<double>> vectors;
    vectors.reserve(inputs.size());
    for (std::size_t start = 0; start < inputs.size(); start += config_.max_batch) {
        const std::size_t end = std::min(start + config_.max_batch, inputs.size());
        std::vector<std::string> batch(inputs.begin() + static_cast<std::ptrdiff_t>(start),
                                       inputs.begin() + static_cast<std::ptrdiff_t>(end));
        auto batch_vectors = embed_batch(batch);
        for (auto& v : batch_vectors) vectors.push_back(std::move(v));
    }
    return vectors;
}

std::vector<std::vector<double>> EmbeddingClient::embed_batch(
    const std::vector<std::string>& batch) {
    json body;
    body["model"] = config_.model_id;
    body["inputs"] = batch;
    const std::string payload = body.dump();

    std::string last_error;
    int backoff = config_.backoff_ms;
    for (int attempt = 1; attempt <= config_.max_attempts; ++attempt) {
        if (attempt > 1) {
            std::this_thread::sleep_for(std::chrono::milliseconds(backoff));
            backoff *= 2;
        }
        httplib::Client client(base_url_);
        client.set_connection_timeout(config_.timeout_s, 0);
        client.set_read_timeout(config_.timeout_s, 0);
        const httplib::Result res = client.Post(path_, payload, "application/json");
        if (!res) {
            last_error = "connection failed (" + httplib::to_string(res.error()) + ")";
            continue;
        }
        if (res->status != 200) {
            last_error = "HTTP status " + std::to_string(res->status);
            continue;
        }
        json parsed = json::parse(res->body, nullptr, false);
        if (parsed.is_discarded() || !parsed.contains("vectors")) {
            throw std::runtime_error(
                "embedding service returned a malformed response body");
        }
        std::vector<std::vector<double>> vectors;
        try {
            vectors = parsed.at("vectors").get<std::vector<std::vector<double>>>();
        } catch (const json::exception& e) {
            throw std::runtime_error(std::string("embedding service response: ") +
                                     e.what());
        }
        if (vectors.size() != batch.size()) {
            throw std::runtime_error("embedding service returned " +
                                     std::to_string(vectors.size()) + " vectors for " +
                                     std::to_string(batch.size()) + " inputs");
        }
        return vectors;
    }
    throw std::runtime_error("embedding service unreachable after " +
                             std::to_string(config_.max_attempts) + " attempts: " +
                             last_error);
}

}  // namespace sindex
