#include "sindex/embeddings.hpp"

#include <stdexcept>
#include <unordered_set>

namespace sindex {

EmbeddingMatrix fetch_embeddings(const std::vector<std::string>& inputs,
                                 EmbeddingCache& cache, EmbeddingClient* client) {
    if (inputs.empty()) {
        throw std::invalid_argument("fetch_embeddings: no inputs");
    }

    std::vector<std::string> misses;
    std::unordered_set<std::string> seen;
    for (const auto& input : inputs) {
        if (!cache.contains(input) && seen.insert(input).second) {
            misses.push_back(input);
        }
    }

    if (!misses.empty()) {
        if (client == nullptr) {
            std::string detail;
            for (std::size_t i = 0; i < misses.size() && i < 5; ++i) {
                if (i > 0) detail += "; ";
                detail += '\'' + misses[i] + '\'';
            }
            if (misses.size() > 5) {
                detail += "; and " + std::to_string(misses.size() - 5) + " more";
            }
            throw std::runtime_error(
                "fetch_embeddings: no endpoint configured and " +
                std::to_string(misses.size()) + " inputs missing from cache: " + detail);
        }
        const auto vectors = client->embed(misses);
        for (std::size_t i = 0; i < misses.size(); ++i) {
            if (cache.dim() != 0 && vectors[i].size() != cache.dim()) {
                throw std::runtime_error(
                    "fetch_embeddings: service returned dimension " +
                    std::to_string(vectors[i].size()) + " but cache '" +
                    cache.path().string() + "' holds dimension " +
                    std::to_string(cache.dim()));
            }
            cache.insert(misses[i], vectors[i]);
        }
        cache.save();
    }

    EmbeddingMatrix em(inputs.size(), cache.dim());
    for (std::size_t i = 0; i < inputs.size(); ++i) {
        const auto vec = cache.lookup(inputs[i]);
        if (!vec) {
            throw std::runtime_error("fetch_embeddings: '" + inputs[i] +
                                     "' missing after fetch");
        }
        auto row = em.row(i);
        std::copy(vec->begin(), vec->end(), row.begin());
    }
    em.normalize_rows();
    return em;
}

}  // namespace sindex
