#pragma once

#include <vector>

#include "sindex/config.hpp"
#include "sindex/dataset.hpp"
#include "sindex/embeddings.hpp"
#include "sindex/evaluation.hpp"
#include "sindex/labeling.hpp"

namespace sindex {

// A record's embeddings resolved for both pipeline roles. Inline embeddings
// fill both matrices; otherwise representative strings (question + separator
// + answer) feed clustering and bare answers feed labeling, both through the
// cache-first fetch path.
struct ResolvedQuestion {
    ResponseSet responses;
    EmbeddingMatrix clustering_rows;
    EmbeddingMatrix answer_rows;
    std::vector<double> truth;  // empty when unavailable
};

ResolvedQuestion resolve_question(const DatasetRecord& record, const Config& config,
                                  EmbeddingCache* cache, EmbeddingClient* client,
                                  bool need_truth);

// Every string a service-backed dataset needs embedded, deduplicated in
// first-seen order. Records carrying inline embeddings contribute nothing.
std::vector<std::string> embedding_inputs(const std::vector<DatasetRecord>& records,
                                          const Config& config);

// Ensures the cache covers the dataset; returns the number of strings that
// had to be fetched.
std::size_t materialize_embeddings(const std::vector<DatasetRecord>& records,
                                   const Config& config, EmbeddingCache& cache,
                                   EmbeddingClient* client);

// Questions ready for score_question; labels default to accurate and are
// only meaningful from build_labeled_corpus.
std::vector<LabeledQuestion> build_corpus(const std::vector<DatasetRecord>& records,
                                          const Config& config, EmbeddingCache* cache,
                                          EmbeddingClient* client);

std::vector<LabeledQuestion> build_labeled_corpus(
    const std::vector<DatasetRecord>& records, const Config& config,
    EmbeddingCache* cache, EmbeddingClient* client);

}  // namespace sindex
