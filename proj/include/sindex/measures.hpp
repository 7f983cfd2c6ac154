#pragma once

#include <cstddef>
#include <vector>

#include "sindex/clustering.hpp"
#include "sindex/core.hpp"

namespace sindex {

// Per-cluster average pairwise cosine similarity, clamped to [0, 1].
// Singletons have no pairs and are assigned 1.0 by convention.
struct ClusterCoherence {
    std::vector<double> avg_similarity;
    std::vector<std::size_t> pair_counts;
};

struct ScoreReport {
    double sindex = 0.0;
    double cluster_entropy = 0.0;
    double naive_entropy = 0.0;
    int k = 0;
    std::vector<double> proportions;
    std::vector<double> adjusted_proportions;
};

ClusterCoherence avg_intra_similarity(const Clustering& c, const SimilarityMatrix& sm);

// p_i' = p_i * avg_similarity_i, so 0 <= p_i' <= p_i componentwise.
std::vector<double> adjusted_proportions(const std::vector<double>& p,
                                         const ClusterCoherence& coh);

// Entropy of the coherence-adjusted cluster proportions. naive_entropy is
// left at 0.0; callers with access to the answer strings fill it themselves.
ScoreReport sindex_score(const Clustering& c, const SimilarityMatrix& sm);

// Entropy over groups of answers that are identical after case-folding and
// whitespace normalization. Ignores embeddings entirely.
double naive_entropy(const ResponseSet& rs);

// The normalization used by naive_entropy: ASCII case-fold, trim, collapse
// internal whitespace runs to single spaces.
std::string normalize_answer(const std::string& text);

}  // namespace sindex
