#include "sindex/labeling.hpp"

#include <stdexcept>

namespace sindex {

std::string to_string(Label label) {
    return label == Label::accurate ? "accurate" : "hallucination";
}

QuestionLabelPolicy policy_from_string(const std::string& name) {
    if (name == "majority") return QuestionLabelPolicy::majority;
    if (name == "low_temp_reference") return QuestionLabelPolicy::low_temp_reference;
    throw std::invalid_argument("unknown question label policy '" + name + "'");
}

std::string to_string(QuestionLabelPolicy policy) {
    return policy == QuestionLabelPolicy::majority ? "majority" : "low_temp_reference";
}

std::vector<LabeledResponse> label_responses(const ResponseSet& rs,
                                             const EmbeddingMatrix& response_embeddings,
                                             std::span<const double> truth_embedding,
                                             double label_threshold) {
    if (!rs.canonical_answer || rs.canonical_answer->empty()) {
        throw std::invalid_argument("label_responses: response set '" + rs.id +
                                    "' has no canonical answer");
    }
    if (response_embeddings.rows() != rs.generations()) {
        throw std::invalid_argument("label_responses: embedding count does not match answers");
    }
    if (truth_embedding.size() != response_embeddings.dim()) {
        throw std::invalid_argument("label_responses: truth embedding dimension mismatch");
    }

    std::vector<LabeledResponse> labels;
    labels.reserve(rs.generations());
    for (std::size_t i = 0; i < rs.generations(); ++i) {
        const double sim = cosine_similarity(response_embeddings.row(i), truth_embedding);
        labels.push_back({i, sim,
                          sim > label_threshold ? Label::accurate : Label::hallucination});
    }
    return labels;
}

Label question_label(const std::vector<LabeledResponse>& labels,
                     QuestionLabelPolicy policy,
                     std::size_t reference_index) {
    if (labels.empty()) {
        throw std::invalid_argument("question_label: empty label list");
    }
    if (policy == QuestionLabelPolicy::low_temp_reference) {
        if (reference_index >= labels.size()) {
            throw std::invalid_argument("question_label: reference index out of range");
        }
        return labels[reference_index].label;
    }
    std::size_t hallucinated = 0;
    for (const auto& l : labels) {
        if (l.label == Label::hallucination) ++hallucinated;
    }
    return 2 * hallucinated >= labels.size() ? Label::hallucination : Label::accurate;
}

}  // namespace sindex
