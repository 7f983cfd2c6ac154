#pragma once

#include <string>
#include <vector>

#include "sindex/core.hpp"
#include "sindex/embedding_cache.hpp"
#include "sindex/embedding_client.hpp"

namespace sindex {

// Cache-first embedding lookup. Misses are deduplicated, fetched from the
// service in order, quantized to the cache's f32 precision, and committed
// atomically before returning, so hits and fresh fetches yield identical
// rows. Output row i corresponds to inputs[i]; rows come back normalized.
// With a null client every input must already be cached.
EmbeddingMatrix fetch_embeddings(const std::vector<std::string>& inputs,
                                 EmbeddingCache& cache, EmbeddingClient* client);

}  // namespace sindex
