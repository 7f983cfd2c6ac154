#pragma once

#include <span>
#include <string>
#include <vector>

#include "sindex/core.hpp"

namespace sindex {

inline constexpr double kDefaultLabelThreshold = 0.95;

enum class Label { accurate, hallucination };

std::string to_string(Label label);

struct LabeledResponse {
    std::size_t response_index = 0;
    double similarity_to_truth = 0.0;
    Label label = Label::hallucination;
};

enum class QuestionLabelPolicy { majority, low_temp_reference };

QuestionLabelPolicy policy_from_string(const std::string& name);
std::string to_string(QuestionLabelPolicy policy);

// A response is accurate only when its similarity to the truth embedding is
// strictly above the threshold; similarity == threshold means hallucination.
std::vector<LabeledResponse> label_responses(const ResponseSet& rs,
                                             const EmbeddingMatrix& response_embeddings,
                                             std::span<const double> truth_embedding,
                                             double label_threshold = kDefaultLabelThreshold);

// Collapse P per-response labels to one per-question binary.
// majority: hallucination when at least half the responses are hallucinations
// (ties resolve toward hallucination). low_temp_reference: adopt the label of
// one designated generation.
Label question_label(const std::vector<LabeledResponse>& labels,
                     QuestionLabelPolicy policy,
                     std::size_t reference_index = 0);

}  // namespace sindex
