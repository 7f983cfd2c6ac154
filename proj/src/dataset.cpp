#include "sindex/dataset.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace sindex {

namespace {

using nlohmann::json;

[[noreturn]] void schema_error(const std::string& where, const std::string& what) {
    throw std::runtime_error(where + ": " + what);
}

void validate_record(const DatasetRecord& r, const std::string& where) {
    if (r.id.empty()) schema_error(where, "field 'id' missing or empty");
    if (r.question.empty()) schema_error(where, "field 'question' missing or empty");
    if (r.answers.empty()) schema_error(where, "field 'answers' must be non-empty");
    if (!r.embeddings.empty()) {
        if (r.embeddings.size() != r.answers.size()) {
            schema_error(where, "field 'embeddings' has " +
                                    std::to_string(r.embeddings.size()) +
                                    " vectors for " + std::to_string(r.answers.size()) +
                                    " answers");
        }
        const std::size_t dim = r.embeddings.front().size();
        if (dim == 0) schema_error(where, "field 'embeddings' contains an empty vector");
        for (const auto& v : r.embeddings) {
            if (v.size() != dim) {
                schema_error(where, "field 'embeddings' mixes dimensions");
            }
        }
        if (!r.truth_embedding.empty() && r.truth_embedding.size() != dim) {
            schema_error(where, "field 'truth_embedding' dimension mismatch");
        }
    }
    if (!r.truth_embedding.empty() && r.canonical_answer.empty()) {
        schema_error(where, "field 'truth_embedding' requires 'canonical_answer'");
    }
}

DatasetRecord parse_record(const json& j, const std::string& where) {
    if (!j.is_object()) schema_error(where, "expected a JSON object");
    DatasetRecord r;
    try {
        r.id = j.at("id").get<std::string>();
        r.question = j.at("question").get<std::string>();
        r.answers = j.at("answers").get<std::vector<std::string>>();
        if (j.contains("canonical_answer")) {
            r.canonical_answer = j.at("canonical_answer").get<std::string>();
        }
        if (j.contains("context")) r.context = j.at("context").get<std::string>();
        if (j.contains("embeddings")) {
            r.embeddings = j.at("embeddings").get<std::vector<std::vector<double>>>();
        }
        if (j.contains("truth_embedding")) {
            r.truth_embedding = j.at("truth_embedding").get<std::vector<double>>();
        }
    } catch (const json::exception& e) {
        schema_error(where, e.what());
    }
    validate_record(r, where);
    return r;
}

json record_to_json(const DatasetRecord& r) {
    json j;
    j["id"] = r.id;
    j["question"] = r.question;
    j["answers"] = r.answers;
    if (!r.canonical_answer.empty()) j["canonical_answer"] = r.canonical_answer;
    if (!r.context.empty()) j["context"] = r.context;
    if (!r.embeddings.empty()) j["embeddings"] = r.embeddings;
    if (!r.truth_embedding.empty()) j["truth_embedding"] = r.truth_embedding;
    return j;
}

}  // namespace

std::vector<DatasetRecord> load_dataset(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw std::runtime_error("cannot open dataset file '" + path.string() + "'");
    }
    std::vector<DatasetRecord> records;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        const std::string where = path.string() + ":" + std::to_string(line_no);
        json j = json::parse(line, nullptr, false);
        if (j.is_discarded()) schema_error(where, "malformed JSON");
        records.push_back(parse_record(j, where));
    }
    return records;
}

void write_dataset(const std::filesystem::path& path,
                   const std::vector<DatasetRecord>& records) {
    std::ofstream out(path, std::ios::trunc);
    if (!out) {
        throw std::runtime_error("cannot write dataset file '" + path.string() + "'");
    }
    for (const auto& r : records) out << record_to_json_line(r) << '\n';
}

std::string record_to_json_line(const DatasetRecord& record) {
    validate_record(record, "record '" + record.id + "'");
    return record_to_json(record).dump();
}

DatasetRecord record_from_json_line(const std::string& line) {
    json j = json::parse(line, nullptr, false);
    if (j.is_discarded()) schema_error("record", "malformed JSON");
    return parse_record(j, "record");
}

ResponseSet to_response_set(const DatasetRecord& record) {
    ResponseSet rs{record.id, record.question, record.answers, std::nullopt};
    if (!record.canonical_answer.empty()) rs.canonical_answer = record.canonical_answer;
    return rs;
}

std::vector<EvalRecord> load_eval_records(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw std::runtime_error("cannot open records file '" + path.string() + "'");
    }
    std::vector<EvalRecord> records;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        const std::string where = path.string() + ":" + std::to_string(line_no);
        json j = json::parse(line, nullptr, false);
        if (j.is_discarded()) schema_error(where, "malformed JSON");
        EvalRecord r;
        try {
            r.question_id = j.at("question_id").get<std::string>();
            r.scores = j.at("scores").get<std::map<std::string, double>>();
            r.label = j.at("label").get<int>();
        } catch (const json::exception& e) {
            schema_error(where, e.what());
        }
        if (r.label != kAccurate && r.label != kHallucinated) {
            schema_error(where, "field 'label' must be 0 or 1");
        }
        if (r.scores.empty()) schema_error(where, "field 'scores' must be non-empty");
        records.push_back(std::move(r));
    }
    return records;
}

void write_eval_records(const std::filesystem::path& path,
                        const std::vector<EvalRecord>& records) {
    std::ofstream out(path, std::ios::trunc);
    if (!out) {
        throw std::runtime_error("cannot write records file '" + path.string() + "'");
    }
    for (const auto& r : records) out << eval_record_to_json_line(r) << '\n';
}

std::string eval_record_to_json_line(const EvalRecord& record) {
    json j;
    j["question_id"] = record.question_id;
    j["scores"] = record.scores;
    j["label"] = record.label;
    return j.dump();
}

}  // namespace sindex
