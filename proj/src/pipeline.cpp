#include "sindex/pipeline.hpp"

#include <stdexcept>
#include <unordered_set>

namespace sindex {

namespace {

EmbeddingMatrix inline_matrix(const DatasetRecord& record) {
    return EmbeddingMatrix::from_rows(record.embeddings);
}

std::vector<double> resolve_truth(const DatasetRecord& record, const Config& config,
                                  EmbeddingCache* cache, EmbeddingClient* client) {
    if (!record.truth_embedding.empty()) return record.truth_embedding;
    if (record.canonical_answer.empty()) {
        throw std::runtime_error("record '" + record.id +
                                 "': labeling requires a canonical answer");
    }
    if (!record.embeddings.empty()) {
        for (std::size_t i = 0; i < record.answers.size(); ++i) {
            if (record.answers[i] == record.canonical_answer) {
                return record.embeddings[i];
            }
        }
        throw std::runtime_error(
            "record '" + record.id +
            "': inline embeddings carry no vector for the canonical answer; add a "
            "'truth_embedding' field or include the canonical answer verbatim");
    }
    if (cache == nullptr) {
        throw std::runtime_error("record '" + record.id +
                                 "': no cache configured to embed the canonical answer");
    }
    const EmbeddingMatrix m =
        fetch_embeddings({record.canonical_answer}, *cache, client);
    const auto row = m.row(0);
    (void)config;
    return {row.begin(), row.end()};
}

}  // namespace

ResolvedQuestion resolve_question(const DatasetRecord& record, const Config& config,
                                  EmbeddingCache* cache, EmbeddingClient* client,
                                  bool need_truth) {
    ResolvedQuestion resolved;
    resolved.responses = to_response_set(record);
    validate(resolved.responses);

    if (!record.embeddings.empty()) {
        resolved.clustering_rows = inline_matrix(record);
        resolved.answer_rows = resolved.clustering_rows;
    } else {
        if (cache == nullptr) {
            throw std::runtime_error("record '" + record.id +
                                     "': no inline embeddings and no cache configured");
        }
        const auto reps =
            build_representative_strings(resolved.responses, config.separator);
        std::vector<std::string> rep_inputs;
        rep_inputs.reserve(reps.size());
        for (const auto& r : reps) rep_inputs.push_back(r.value);
        resolved.clustering_rows = fetch_embeddings(rep_inputs, *cache, client);
        resolved.answer_rows = fetch_embeddings(record.answers, *cache, client);
    }

    if (need_truth) {
        resolved.truth = resolve_truth(record, config, cache, client);
        if (resolved.truth.size() != resolved.answer_rows.dim()) {
            throw std::runtime_error("record '" + record.id +
                                     "': truth embedding dimension mismatch");
        }
    }
    return resolved;
}

std::vector<std::string> embedding_inputs(const std::vector<DatasetRecord>& records,
                                          const Config& config) {
    std::vector<std::string> inputs;
    std::unordered_set<std::string> seen;
    const auto add = [&](const std::string& s) {
        if (seen.insert(s).second) inputs.push_back(s);
    };
    for (const auto& record : records) {
        if (!record.embeddings.empty()) continue;
        const ResponseSet rs = to_response_set(record);
        validate(rs);
        for (const auto& rep : build_representative_strings(rs, config.separator)) {
            add(rep.value);
        }
        for (const auto& answer : record.answers) add(answer);
        if (!record.canonical_answer.empty()) add(record.canonical_answer);
    }
    return inputs;
}

std::size_t materialize_embeddings(const std::vector<DatasetRecord>& records,
                                   const Config& config, EmbeddingCache& cache,
                                   EmbeddingClient* client) {
    const auto inputs = embedding_inputs(records, config);
    if (inputs.empty()) return 0;
    std::size_t missing = 0;
    for (const auto& input : inputs) {
        if (!cache.contains(input)) ++missing;
    }
    fetch_embeddings(inputs, cache, client);
    return missing;
}

std::vector<LabeledQuestion> build_corpus(const std::vector<DatasetRecord>& records,
                                          const Config& config, EmbeddingCache* cache,
                                          EmbeddingClient* client) {
    std::vector<LabeledQuestion> corpus;
    corpus.reserve(records.size());
    for (const auto& record : records) {
        ResolvedQuestion resolved =
            resolve_question(record, config, cache, client, false);
        corpus.push_back({record.id, std::move(resolved.responses),
                          std::move(resolved.clustering_rows), kAccurate});
    }
    return corpus;
}

std::vector<LabeledQuestion> build_labeled_corpus(
    const std::vector<DatasetRecord>& records, const Config& config,
    EmbeddingCache* cache, EmbeddingClient* client) {
    const QuestionLabelPolicy policy = policy_from_string(config.label_policy);
    std::vector<LabeledQuestion> corpus;
    corpus.reserve(records.size());
    for (const auto& record : records) {
        ResolvedQuestion resolved = resolve_question(record, config, cache, client, true);
        const auto labels =
            label_responses(resolved.responses, resolved.answer_rows, resolved.truth,
                            config.label_threshold);
        const Label verdict = question_label(labels, policy, 0);
        corpus.push_back({record.id, std::move(resolved.responses),
                          std::move(resolved.clustering_rows),
                          verdict == Label::hallucination ? kHallucinated : kAccurate});
    }
    return corpus;
}

}  // namespace sindex
