#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <vector>

#include "sindex/clustering.hpp"
#include "sindex/core.hpp"
#include "sindex/rng.hpp"

using namespace sindex;

namespace {

SimilarityMatrix matrix_from(const std::vector<std::vector<double>>& sims) {
    SimilarityMatrix sm(sims.size());
    for (std::size_t i = 0; i < sims.size(); ++i) {
        for (std::size_t j = i + 1; j < sims.size(); ++j) {
            sm.set(i, j, sims[i][j]);
        }
    }
    return sm;
}

// Three well-separated groups, interleaved: {0,2,5}, {1,4}, {3}.
SimilarityMatrix grouped_six() {
    const double in = 0.995, out = 0.1;
    std::vector<std::vector<double>> s(6, std::vector<double>(6, out));
    const int group[6] = {0, 1, 0, 2, 1, 0};
    for (std::size_t i = 0; i < 6; ++i) {
        for (std::size_t j = 0; j < 6; ++j) {
            if (group[i] == group[j]) s[i][j] = in;
        }
    }
    return matrix_from(s);
}

SimilarityMatrix random_similarity(Rng& rng, std::size_t p) {
    SimilarityMatrix sm(p);
    for (std::size_t i = 0; i < p; ++i) {
        for (std::size_t j = i + 1; j < p; ++j) {
            sm.set(i, j, rng.uniform(-1.0, 1.0));
        }
    }
    return sm;
}

// From-scratch average linkage: recompute every inter-cluster mean from the
// original matrix at each step. Cross-checks the incremental updates in
// hac_average_linkage.
std::vector<int> reference_average_linkage(const SimilarityMatrix& sm, double threshold) {
    std::vector<std::vector<int>> clusters;
    for (std::size_t i = 0; i < sm.size(); ++i) {
        clusters.push_back({static_cast<int>(i)});
    }
    for (;;) {
        double best = std::numeric_limits<double>::infinity();
        std::pair<int, int> best_key{0, 0};
        std::size_t bi = 0, bj = 0;
        bool found = false;
        for (std::size_t i = 0; i < clusters.size(); ++i) {
            for (std::size_t j = i + 1; j < clusters.size(); ++j) {
                double total = 0.0;
                for (int a : clusters[i]) {
                    for (int b : clusters[j]) {
                        total += 1.0 - sm.at(static_cast<std::size_t>(a),
                                             static_cast<std::size_t>(b));
                    }
                }
                const double d = total / static_cast<double>(clusters[i].size() *
                                                             clusters[j].size());
                const std::pair<int, int> key{
                    std::min(clusters[i].front(), clusters[j].front()),
                    std::max(clusters[i].front(), clusters[j].front())};
                if (!found || d < best || (d == best && key < best_key)) {
                    found = true;
                    best = d;
                    best_key = key;
                    bi = i;
                    bj = j;
                }
            }
        }
        if (!found || best > threshold || clusters.size() == 1) break;
        clusters[bi].insert(clusters[bi].end(), clusters[bj].begin(), clusters[bj].end());
        std::sort(clusters[bi].begin(), clusters[bi].end());
        clusters.erase(clusters.begin() + static_cast<std::ptrdiff_t>(bj));
    }
    std::sort(clusters.begin(), clusters.end(),
              [](const auto& a, const auto& b) { return a.front() < b.front(); });
    std::vector<int> assignments(sm.size(), -1);
    for (std::size_t c = 0; c < clusters.size(); ++c) {
        for (int m : clusters[c]) assignments[static_cast<std::size_t>(m)] =
            static_cast<int>(c);
    }
    return assignments;
}

}  // namespace

TEST_CASE("algorithm names round-trip") {
    CHECK(algorithm_from_string("hac") == Algorithm::hac_average);
    CHECK(algorithm_from_string("hac_average") == Algorithm::hac_average);
    CHECK(algorithm_from_string("greedy") == Algorithm::greedy_single_pass);
    CHECK(to_string(Algorithm::greedy_single_pass) == "greedy_single_pass");
    CHECK_THROWS_AS((void)algorithm_from_string("kmeans"), std::invalid_argument);
}

TEST_CASE("cosine distance") {
    CHECK(cosine_distance(1.0) == 0.0);
    CHECK(cosine_distance(0.0) == 1.0);
    CHECK(cosine_distance(-1.0) == 2.0);
}

TEST_CASE("hac finds the planted three-group partition") {
    const Clustering c = hac_average_linkage(grouped_six(), 0.05);
    CHECK(c.k == 3);
    CHECK(c.assignments == std::vector<int>{0, 1, 0, 2, 1, 0});
    CHECK(c.cluster_sizes() == std::vector<std::size_t>{3, 2, 1});
    CHECK(c.algorithm == Algorithm::hac_average);
    CHECK(c.generations() == 6);
}

TEST_CASE("hac merges everything under a loose threshold") {
    const Clustering c = hac_average_linkage(grouped_six(), 1.0);
    CHECK(c.k == 1);
    CHECK(c.merge_trace.size() == 5);
}

TEST_CASE("merge may happen at exactly the threshold, never above it") {
    // 0.9375 and 0.0625 are exactly representable, so the distance lands
    // exactly on the threshold.
    std::vector<std::vector<double>> s{{1.0, 0.9375}, {0.9375, 1.0}};
    const auto sm = matrix_from(s);
    CHECK(hac_average_linkage(sm, 0.0625).k == 1);
    CHECK(hac_average_linkage(sm, 0.0624).k == 2);
    CHECK(greedy_cluster(sm, 0.0625).k == 1);
    CHECK(greedy_cluster(sm, 0.0624).k == 2);
}

TEST_CASE("merge trace uses dendrogram ids and stays within the threshold") {
    const Clustering c = hac_average_linkage(grouped_six(), 0.05);
    REQUIRE(c.merge_trace.size() == 3);
    // Singletons are 0..5; merge t creates id 6+t.
    for (const auto& m : c.merge_trace) {
        CHECK(m.left >= 0);
        CHECK(m.right >= 0);
        CHECK(m.left != m.right);
        CHECK(m.distance <= 0.05);
        CHECK(m.left < 6 + static_cast<int>(c.merge_trace.size()));
    }
    // {0,2} first (smallest pair key), then that cluster with 5, then {1,4}.
    CHECK(c.merge_trace[0].left == 0);
    CHECK(c.merge_trace[0].right == 2);
    CHECK(c.merge_trace[1].left == 6);
    CHECK(c.merge_trace[1].right == 5);
    CHECK(c.merge_trace[2].left == 1);
    CHECK(c.merge_trace[2].right == 4);
}

TEST_CASE("single response is a single cluster") {
    SimilarityMatrix sm(1);
    const Clustering c = hac_average_linkage(sm, 0.05);
    CHECK(c.k == 1);
    CHECK(c.assignments == std::vector<int>{0});
    CHECK(c.merge_trace.empty());
}

TEST_CASE("clustering input validation") {
    SimilarityMatrix empty;
    CHECK_THROWS_AS((void)hac_average_linkage(empty, 0.05), std::invalid_argument);
    CHECK_THROWS_AS((void)greedy_cluster(empty, 0.05), std::invalid_argument);
    SimilarityMatrix one(1);
    CHECK_THROWS_AS((void)hac_average_linkage(one, -0.1), std::invalid_argument);
    CHECK_THROWS_AS((void)hac_average_linkage(one, 2.5), std::invalid_argument);
}

TEST_CASE("incremental hac matches the from-scratch reference") {
    Rng rng(7);
    for (int trial = 0; trial < 60; ++trial) {
        const std::size_t p = 2 + rng.index(7);
        const auto sm = random_similarity(rng, p);
        const double threshold = rng.uniform(0.0, 1.2);
        const Clustering c = hac_average_linkage(sm, threshold);
        const auto expected = reference_average_linkage(sm, threshold);
        CAPTURE(trial);
        CAPTURE(p);
        CAPTURE(threshold);
        CHECK(c.assignments == expected);
    }
}

TEST_CASE("hac partition is invariant under response reordering") {
    Rng rng(19);
    const std::size_t p = 7;
    const auto sm = random_similarity(rng, p);
    const Clustering base = hac_average_linkage(sm, 0.6);

    std::vector<std::size_t> perm(p);
    std::iota(perm.begin(), perm.end(), std::size_t{0});
    rng.shuffle(perm);
    SimilarityMatrix permuted(p);
    for (std::size_t i = 0; i < p; ++i) {
        for (std::size_t j = i + 1; j < p; ++j) {
            permuted.set(i, j, sm.at(perm[i], perm[j]));
        }
    }
    const Clustering moved = hac_average_linkage(permuted, 0.6);
    // Same partition as sets: responses i and j share a cluster after the
    // permutation iff their originals did.
    for (std::size_t i = 0; i < p; ++i) {
        for (std::size_t j = 0; j < p; ++j) {
            CHECK((moved.assignments[i] == moved.assignments[j]) ==
                  (base.assignments[perm[i]] == base.assignments[perm[j]]));
        }
    }
}

TEST_CASE("greedy joins the first cluster within reach, in order") {
    // Response 2 is within reach of cluster {0} and of {1}; it must join {0}.
    std::vector<std::vector<double>> s{
        {1.00, 0.50, 0.97},
        {0.50, 1.00, 0.98},
        {0.97, 0.98, 1.00},
    };
    const Clustering c = greedy_cluster(matrix_from(s), 0.05);
    CHECK(c.k == 2);
    CHECK(c.assignments == std::vector<int>{0, 1, 0});
    REQUIRE(c.merge_trace.size() == 1);
    CHECK(c.merge_trace[0].left == 0);   // founder of the cluster joined
    CHECK(c.merge_trace[0].right == 2);  // the joining response
}

TEST_CASE("greedy averages over current members, not the founder alone") {
    // 2 is close to 0 but the {0,1} average distance exceeds the threshold.
    std::vector<std::vector<double>> s{
        {1.00, 0.96, 0.97},
        {0.96, 1.00, 0.80},
        {0.97, 0.80, 1.00},
    };
    const Clustering c = greedy_cluster(matrix_from(s), 0.05);
    CHECK(c.assignments == std::vector<int>{0, 0, 1});
}

TEST_CASE("greedy founds a new cluster when nothing is in reach") {
    const Clustering c = greedy_cluster(grouped_six(), 0.05);
    CHECK(c.k == 3);
    CHECK(c.assignments == std::vector<int>{0, 1, 0, 2, 1, 0});
}

TEST_CASE("hac and greedy agree on well-separated groups") {
    const auto sm = grouped_six();
    CHECK(hac_average_linkage(sm, 0.05).assignments ==
          greedy_cluster(sm, 0.05).assignments);
}

TEST_CASE("cluster proportions sum to one") {
    const Clustering c = hac_average_linkage(grouped_six(), 0.05);
    const auto props = cluster_proportions(c);
    REQUIRE(props.size() == 3);
    CHECK(props[0] == doctest::Approx(0.5));
    CHECK(props[1] == doctest::Approx(1.0 / 3.0));
    CHECK(props[2] == doctest::Approx(1.0 / 6.0));
    CHECK(std::accumulate(props.begin(), props.end(), 0.0) == doctest::Approx(1.0));
}

TEST_CASE("format_merge_trace emits one csv line per merge") {
    const Clustering c = hac_average_linkage(grouped_six(), 0.05);
    const std::string text = format_merge_trace(c);
    CHECK(std::count(text.begin(), text.end(), '\n') == 3);
    CHECK(text.substr(0, 4) == "0,2,");
}
