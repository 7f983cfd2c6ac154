#pragma once

#include <string>
#include <vector>

#include "sindex/core.hpp"

namespace sindex {

// Cosine distance cutoff equivalent to a 0.95 similarity cutoff.
inline constexpr double kDefaultDistanceThreshold = 0.05;

enum class Algorithm {
    hac_average,        // bottom-up agglomeration, average linkage
    greedy_single_pass  // one pass, join the first cluster within threshold
};

std::string to_string(Algorithm a);
Algorithm algorithm_from_string(const std::string& name);

/// One agglomeration step. Ids follow the usual dendrogram convention:
/// 0..P-1 are the singletons, P+t is the cluster created by merge t.
/// `left` is the side whose smallest member index is smaller.
struct MergeEvent {
    int left;
    int right;
    double distance;
};

/// A partition of the P responses into k clusters plus the merge trace
/// that produced it. Cluster ids are contiguous 0..k-1, ordered by each
/// cluster's smallest member index.
struct Clustering {
    std::vector<int> assignments;  // size P, entry i = cluster id of response i
    int k = 0;
    std::vector<MergeEvent> merge_trace;
    Algorithm algorithm = Algorithm::hac_average;
    double threshold = 0.0;

    std::size_t generations() const { return assignments.size(); }
    std::vector<std::size_t> cluster_sizes() const;
};

/// Cosine distance, 1 - similarity. Range [0, 2].
double cosine_distance(double similarity);

/// Average-linkage agglomerative clustering. Starts from P singletons and
/// repeatedly merges the pair of clusters with minimum average pairwise
/// distance until that minimum exceeds `threshold`. Ties break toward the
/// pair whose (smallest-member, other-smallest-member) index pair is
/// lexicographically least, so partitions are reproducible.
Clustering hac_average_linkage(const SimilarityMatrix& sm, double threshold);

/// Single pass over responses in index order: response i joins the first
/// existing cluster whose average distance to i is <= threshold, otherwise
/// it founds a new cluster at the end of the list.
Clustering greedy_cluster(const SimilarityMatrix& sm, double threshold);

/// |C_i| / P per cluster; sums to 1.
std::vector<double> cluster_proportions(const Clustering& c);

/// One merge per line: "left,right,distance". Audit output for the CLI.
std::string format_merge_trace(const Clustering& c);

}  // namespace sindex
