#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "sindex/core.hpp"
#include "sindex/evaluation.hpp"

namespace sindex {

// One question with its sampled answers, as stored in JSONL datasets.
// canonical_answer and context are optional (empty means absent). embeddings,
// when present, carry one vector per answer; truth_embedding carries the
// canonical answer's vector for offline labeling.
struct DatasetRecord {
    std::string id;
    std::string question;
    std::vector<std::string> answers;
    std::string canonical_answer;
    std::string context;
    std::vector<std::vector<double>> embeddings;
    std::vector<double> truth_embedding;

    bool operator==(const DatasetRecord&) const = default;
};

std::vector<DatasetRecord> load_dataset(const std::filesystem::path& path);
void write_dataset(const std::filesystem::path& path,
                   const std::vector<DatasetRecord>& records);

std::string record_to_json_line(const DatasetRecord& record);
DatasetRecord record_from_json_line(const std::string& line);

ResponseSet to_response_set(const DatasetRecord& record);

std::vector<EvalRecord> load_eval_records(const std::filesystem::path& path);
void write_eval_records(const std::filesystem::path& path,
                        const std::vector<EvalRecord>& records);
std::string eval_record_to_json_line(const EvalRecord& record);

}  // namespace sindex
