#include "sindex/clustering.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace sindex {

std::string to_string(Algorithm a) {
    switch (a) {
        case Algorithm::hac_average: return "hac_average";
        case Algorithm::greedy_single_pass: return "greedy_single_pass";
    }
    return "unknown";
}

Algorithm algorithm_from_string(const std::string& name) {
    if (name == "hac" || name == "hac_average") return Algorithm::hac_average;
    if (name == "greedy" || name == "greedy_single_pass") return Algorithm::greedy_single_pass;
    throw std::invalid_argument("unknown clustering algorithm '" + name + "'");
}

std::vector<std::size_t> Clustering::cluster_sizes() const {
    std::vector<std::size_t> sizes(static_cast<std::size_t>(k), 0);
    for (int a : assignments) sizes[static_cast<std::size_t>(a)]++;
    return sizes;
}

double cosine_distance(double similarity) { return 1.0 - similarity; }

namespace {

void check_inputs(const SimilarityMatrix& sm, double threshold) {
    if (sm.size() == 0) throw std::invalid_argument("clustering: empty similarity matrix");
    if (!(threshold >= 0.0 && threshold <= 2.0)) {
        throw std::invalid_argument("clustering: distance threshold must lie in [0, 2]");
    }
}

// Canonical ids: clusters sorted by smallest member index get ids 0..k-1.
void finalize_partition(const std::vector<std::vector<int>>& clusters, Clustering& out,
                        std::size_t p) {
    std::vector<std::size_t> order(clusters.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return clusters[a].front() < clusters[b].front();
    });
    out.assignments.assign(p, -1);
    out.k = static_cast<int>(clusters.size());
    for (std::size_t rank = 0; rank < order.size(); ++rank) {
        for (int member : clusters[order[rank]]) {
            out.assignments[static_cast<std::size_t>(member)] = static_cast<int>(rank);
        }
    }
}

}  // namespace

Clustering hac_average_linkage(const SimilarityMatrix& sm, double threshold) {
    check_inputs(sm, threshold);
    const std::size_t p = sm.size();

    struct Slot {
        bool active = true;
        int dendro_id = 0;
        int rep = 0;  // smallest member index, the tie-break key
        std::vector<int> members;
    };
    std::vector<Slot> slots(p);
    // Slot-indexed linkage distances, updated in place on merge.
    std::vector<double> dist(p * p, 0.0);
    for (std::size_t i = 0; i < p; ++i) {
        slots[i].dendro_id = static_cast<int>(i);
        slots[i].rep = static_cast<int>(i);
        slots[i].members = {static_cast<int>(i)};
        for (std::size_t j = i + 1; j < p; ++j) {
            const double d = cosine_distance(sm.at(i, j));
            dist[i * p + j] = d;
            dist[j * p + i] = d;
        }
    }

    Clustering out;
    out.algorithm = Algorithm::hac_average;
    out.threshold = threshold;

    int next_dendro_id = static_cast<int>(p);
    std::size_t active_count = p;

    while (active_count > 1) {
        double best = std::numeric_limits<double>::infinity();
        std::pair<int, int> best_key{0, 0};
        std::size_t best_i = 0, best_j = 0;
        bool found = false;
        for (std::size_t i = 0; i < p; ++i) {
            if (!slots[i].active) continue;
            for (std::size_t j = i + 1; j < p; ++j) {
                if (!slots[j].active) continue;
                const double d = dist[i * p + j];
                const std::pair<int, int> key{std::min(slots[i].rep, slots[j].rep),
                                              std::max(slots[i].rep, slots[j].rep)};
                if (!found || d < best || (d == best && key < best_key)) {
                    found = true;
                    best = d;
                    best_key = key;
                    best_i = i;
                    best_j = j;
                }
            }
        }
        if (!found || best > threshold) break;

        Slot& a = slots[best_i];
        Slot& b = slots[best_j];
        const auto size_a = static_cast<double>(a.members.size());
        const auto size_b = static_cast<double>(b.members.size());

        const bool a_first = a.rep < b.rep;
        out.merge_trace.push_back({a_first ? a.dendro_id : b.dendro_id,
                                   a_first ? b.dendro_id : a.dendro_id, best});

        // Average-linkage update: d(A+B, C) = (|A| d(A,C) + |B| d(B,C)) / (|A|+|B|).
        for (std::size_t c = 0; c < p; ++c) {
            if (!slots[c].active || c == best_i || c == best_j) continue;
            const double merged =
                (size_a * dist[best_i * p + c] + size_b * dist[best_j * p + c]) /
                (size_a + size_b);
            dist[best_i * p + c] = merged;
            dist[c * p + best_i] = merged;
        }

        a.members.insert(a.members.end(), b.members.begin(), b.members.end());
        std::sort(a.members.begin(), a.members.end());
        a.rep = a.members.front();
        a.dendro_id = next_dendro_id++;
        b.active = false;
        b.members.clear();
        --active_count;
    }

    std::vector<std::vector<int>> clusters;
    for (auto& s : slots) {
        if (s.active) clusters.push_back(std::move(s.members));
    }
    finalize_partition(clusters, out, p);
    return out;
}

Clustering greedy_cluster(const SimilarityMatrix& sm, double threshold) {
    check_inputs(sm, threshold);
    const std::size_t p = sm.size();

    Clustering out;
    out.algorithm = Algorithm::greedy_single_pass;
    out.threshold = threshold;

    std::vector<std::vector<int>> clusters;
    for (std::size_t i = 0; i < p; ++i) {
        bool joined = false;
        for (auto& cluster : clusters) {
            double total = 0.0;
            for (int member : cluster) {
                total += cosine_distance(sm.at(i, static_cast<std::size_t>(member)));
            }
            const double avg = total / static_cast<double>(cluster.size());
            if (avg <= threshold) {
                // Trace entry: the joining response against the cluster's founder.
                out.merge_trace.push_back({cluster.front(), static_cast<int>(i), avg});
                cluster.push_back(static_cast<int>(i));
                joined = true;
                break;
            }
        }
        if (!joined) clusters.push_back({static_cast<int>(i)});
    }
    finalize_partition(clusters, out, p);
    return out;
}

std::vector<double> cluster_proportions(const Clustering& c) {
    const auto sizes = c.cluster_sizes();
    const auto p = static_cast<double>(c.generations());
    std::vector<double> props(sizes.size());
    for (std::size_t i = 0; i < sizes.size(); ++i) {
        props[i] = static_cast<double>(sizes[i]) / p;
    }
    return props;
}

std::string format_merge_trace(const Clustering& c) {
    std::ostringstream os;
    os.precision(17);
    for (const auto& m : c.merge_trace) {
        os << m.left << ',' << m.right << ',' << m.distance << '\n';
    }
    return os.str();
}

}  // namespace sindex
