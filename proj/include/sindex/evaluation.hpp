#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "sindex/clustering.hpp"
#include "sindex/core.hpp"
#include "sindex/measures.hpp"

namespace sindex {

inline constexpr int kHallucinated = 1;
inline constexpr int kAccurate = 0;

struct EvalRecord {
    std::string question_id;
    std::map<std::string, double> scores;
    int label = kAccurate;
};

// A question ready for scoring: answers, their embeddings (one row per
// answer, used for both clustering and coherence), and the question-level
// binary label.
struct LabeledQuestion {
    std::string question_id;
    ResponseSet responses;
    EmbeddingMatrix embeddings;
    int label = kAccurate;
};

// Mann-Whitney AUROC with midranks for ties. Label 1 (hallucination) is the
// positive class; higher scores rank as more positive.
double auroc(std::span<const double> scores, std::span<const int> labels);

EvalRecord score_question(const LabeledQuestion& q, double distance_threshold,
                          Algorithm algo = Algorithm::hac_average);

// One AUROC per measure name, keyed alphabetically.
std::map<std::string, double> evaluate(const std::vector<EvalRecord>& records);

// Sweep over similarity cutoffs in (0, 1); each is converted to a distance
// threshold of 1 - cutoff before clustering. Rows are (cutoff, sindex AUROC).
std::vector<std::pair<double, double>> ablate_threshold(
    const std::vector<LabeledQuestion>& corpus,
    const std::vector<double>& similarity_cutoffs,
    Algorithm algo = Algorithm::hac_average);

inline const std::vector<double> kDefaultCutoffSweep = {0.70, 0.80, 0.85,
                                                        0.90, 0.95, 0.99};

// Re-scores each question truncated to its first P answers. Labels are kept
// from the full question. Rows are (P, sindex AUROC).
std::vector<std::pair<std::size_t, double>> ablate_generations(
    const std::vector<LabeledQuestion>& corpus,
    const std::vector<std::size_t>& p_values,
    double distance_threshold = kDefaultDistanceThreshold,
    Algorithm algo = Algorithm::hac_average);

inline const std::vector<std::size_t> kDefaultGenerationSweep = {2, 4,  6, 8,
                                                                 10, 12, 14};

struct BenchSample {
    std::size_t p = 0;
    std::string algorithm;
    double wall_time = 0.0;  // median seconds over repetitions
    int repetitions = 0;
    std::size_t nli_calls = 0;  // only set on mock_nli samples
};

struct BenchOptions {
    std::vector<std::size_t> p_values = {25, 50, 100, 200};
    std::size_t dim = 384;
    int repetitions = 5;
    double mock_nli_latency_ms = 10.0;
    std::uint64_t seed = 1234;
};

// Times similarity + clustering on random unit vectors for both algorithms,
// plus a mock of the pairwise-NLI path. The mock invokes a no-op comparator
// once per unordered pair and reports measured loop time plus
// nli_calls * latency, so large P never actually sleeps for minutes.
std::vector<BenchSample> bench_clustering(const BenchOptions& options);

// Least-squares slope of log(wall_time) against log(P) for one algorithm.
double bench_fit_exponent(const std::vector<BenchSample>& samples,
                          const std::string& algorithm);

std::string format_eval_table(const std::map<std::string, double>& table);
std::string format_eval_csv(const std::map<std::string, double>& table);
std::string format_sweep_csv(const std::string& param_name,
                             const std::vector<std::pair<double, double>>& rows);
std::string format_sweep_csv(const std::string& param_name,
                             const std::vector<std::pair<std::size_t, double>>& rows);
// One sample per line: P,algorithm,median_seconds,repetitions.
std::string format_bench(const std::vector<BenchSample>& samples);

}  // namespace sindex
