#include "sindex/measures.hpp"

#include <algorithm>
#include <cctype>
#include <stdexcept>
#include <unordered_map>

namespace sindex {

ClusterCoherence avg_intra_similarity(const Clustering& c, const SimilarityMatrix& sm) {
    if (c.generations() != sm.size()) {
        throw std::invalid_argument("avg_intra_similarity: clustering covers " +
                                    std::to_string(c.generations()) +
                                    " responses but similarity matrix has " +
                                    std::to_string(sm.size()));
    }
    const auto k = static_cast<std::size_t>(c.k);
    std::vector<std::vector<std::size_t>> members(k);
    for (std::size_t i = 0; i < c.assignments.size(); ++i) {
        members[static_cast<std::size_t>(c.assignments[i])].push_back(i);
    }

    ClusterCoherence coh;
    coh.avg_similarity.resize(k);
    coh.pair_counts.resize(k);
    for (std::size_t ci = 0; ci < k; ++ci) {
        const auto& m = members[ci];
        const std::size_t pairs = m.size() * (m.size() - 1) / 2;
        coh.pair_counts[ci] = pairs;
        if (pairs == 0) {
            coh.avg_similarity[ci] = 1.0;
            continue;
        }
        double total = 0.0;
        for (std::size_t a = 0; a < m.size(); ++a) {
            for (std::size_t b = a + 1; b < m.size(); ++b) {
                total += sm.at(m[a], m[b]);
            }
        }
        coh.avg_similarity[ci] =
            std::clamp(total / static_cast<double>(pairs), 0.0, 1.0);
    }
    return coh;
}

std::vector<double> adjusted_proportions(const std::vector<double>& p,
                                         const ClusterCoherence& coh) {
    if (p.size() != coh.avg_similarity.size()) {
        throw std::invalid_argument("adjusted_proportions: length mismatch");
    }
    std::vector<double> adjusted(p.size());
    for (std::size_t i = 0; i < p.size(); ++i) {
        adjusted[i] = p[i] * coh.avg_similarity[i];
    }
    return adjusted;
}

ScoreReport sindex_score(const Clustering& c, const SimilarityMatrix& sm) {
    ScoreReport report;
    report.k = c.k;
    report.proportions = cluster_proportions(c);
    const ClusterCoherence coh = avg_intra_similarity(c, sm);
    report.adjusted_proportions = adjusted_proportions(report.proportions, coh);
    report.cluster_entropy = shannon_entropy(report.proportions);
    report.sindex = shannon_entropy(report.adjusted_proportions);
    return report;
}

std::string normalize_answer(const std::string& text) {
    std::string out;
    out.reserve(text.size());
    bool pending_space = false;
    for (unsigned char ch : text) {
        if (std::isspace(ch)) {
            pending_space = !out.empty();
            continue;
        }
        if (pending_space) {
            out.push_back(' ');
            pending_space = false;
        }
        out.push_back(static_cast<char>(std::tolower(ch)));
    }
    return out;
}

double naive_entropy(const ResponseSet& rs) {
    if (rs.answers.empty()) {
        throw std::invalid_argument("naive_entropy: no answers");
    }
    std::unordered_map<std::string, std::size_t> groups;
    for (const auto& answer : rs.answers) {
        groups[normalize_answer(answer)]++;
    }
    const auto p = static_cast<double>(rs.answers.size());
    std::vector<double> proportions;
    proportions.reserve(groups.size());
    for (const auto& [text, count] : groups) {
        proportions.push_back(static_cast<double>(count) / p);
    }
    return shannon_entropy(proportions);
}

}  // namespace sindex
