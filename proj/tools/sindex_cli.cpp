#include <filesystem>
#include <iomanip>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "sindex/clustering.hpp"
#include "sindex/config.hpp"
#include "sindex/dataset.hpp"
#include "sindex/evaluation.hpp"
#include "sindex/pipeline.hpp"
#include "sindex/synth.hpp"

namespace {

using namespace sindex;

struct CommonOptions {
    std::string config_file;
    std::string cache_file;
    std::string endpoint;
    std::string model;
};

Config make_config(const CommonOptions& common) {
    std::optional<std::filesystem::path> file;
    if (!common.config_file.empty()) file = common.config_file;
    Config config = load_config(file);
    if (!common.endpoint.empty()) config.endpoint = common.endpoint;
    if (!common.model.empty()) config.model_id = common.model;
    return config;
}

std::filesystem::path cache_path(const CommonOptions& common,
                                 const std::string& dataset) {
    if (!common.cache_file.empty()) return common.cache_file;
    return std::filesystem::path(dataset).replace_extension(".embcache");
}

std::unique_ptr<EmbeddingClient> make_client(const Config& config) {
    if (config.endpoint.empty()) return nullptr;
    return std::make_unique<EmbeddingClient>(
        EmbeddingServiceConfig{config.endpoint, config.model_id});
}

// Cache and client are only materialized when some record actually needs a
// fetch; purely inline datasets run with neither.
struct EmbeddingSource {
    std::unique_ptr<EmbeddingCache> cache;
    std::unique_ptr<EmbeddingClient> client;
};

EmbeddingSource open_source(const std::vector<DatasetRecord>& records,
                            const Config& config, const CommonOptions& common,
                            const std::string& dataset) {
    EmbeddingSource source;
    const bool needs_fetch =
        std::any_of(records.begin(), records.end(),
                    [](const DatasetRecord& r) { return r.embeddings.empty(); });
    if (needs_fetch) {
        source.cache = std::make_unique<EmbeddingCache>(cache_path(common, dataset),
                                                        config.model_id);
        source.client = make_client(config);
    }
    return source;
}

void add_common(CLI::App* sub, CommonOptions& common, bool with_embedding_flags) {
    sub->add_option("--config", common.config_file, "JSON config file");
    if (with_embedding_flags) {
        sub->add_option("--cache", common.cache_file,
                        "embedding cache file (default: dataset with .embcache)");
        sub->add_option("--endpoint", common.endpoint,
                        "embedding service URL (overrides config and env)");
        sub->add_option("--model", common.model, "embedding model id");
    }
}

std::string format_score_row(const EvalRecord& record,
                             const std::vector<std::string>& measures) {
    std::ostringstream os;
    os << record.question_id;
    os << std::fixed << std::setprecision(4);
    for (const auto& m : measures) {
        const auto it = record.scores.find(m);
        if (it != record.scores.end()) os << ' ' << m << '=' << it->second;
    }
    return os.str();
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"cluster sampled LLM answers and score their semantic inconsistency"};
    app.require_subcommand(1);
    app.failure_message([](const CLI::App* a, const CLI::Error& e) {
        return "error: " + std::string(e.what()) + "\n\n" + a->help();
    });

    // embed
    auto* embed_cmd = app.add_subcommand(
        "embed", "materialize representative-string and answer embeddings");
    CommonOptions embed_common;
    std::string embed_dataset;
    embed_cmd->add_option("dataset", embed_dataset, "JSONL dataset")->required();
    add_common(embed_cmd, embed_common, true);
    embed_cmd->callback([&] {
        const Config config = make_config(embed_common);
        const auto records = load_dataset(embed_dataset);
        EmbeddingCache cache(cache_path(embed_common, embed_dataset), config.model_id);
        const auto client = make_client(config);
        const std::size_t fetched =
            materialize_embeddings(records, config, cache, client.get());
        std::cout << "fetched " << fetched << " new embeddings; cache "
                  << cache.path().string() << " holds " << cache.size() << " entries\n";
    });

    // cluster
    auto* cluster_cmd =
        app.add_subcommand("cluster", "print one question's partition and merge trace");
    CommonOptions cluster_common;
    std::string cluster_dataset, cluster_id, cluster_algo = "hac";
    double cluster_threshold = kDefaultDistanceThreshold;
    cluster_cmd->add_option("dataset", cluster_dataset, "JSONL dataset")->required();
    cluster_cmd->add_option("--id", cluster_id, "question id")->required();
    cluster_cmd->add_option("--algo", cluster_algo, "hac or greedy");
    cluster_cmd->add_option("--threshold", cluster_threshold, "cosine distance cutoff");
    add_common(cluster_cmd, cluster_common, true);
    cluster_cmd->callback([&] {
        Config config = make_config(cluster_common);
        config.distance_threshold = cluster_threshold;
        const auto records = load_dataset(cluster_dataset);
        const auto it =
            std::find_if(records.begin(), records.end(),
                         [&](const DatasetRecord& r) { return r.id == cluster_id; });
        if (it == records.end()) {
            throw std::runtime_error("no record with id '" + cluster_id + "' in " +
                                     cluster_dataset);
        }
        const auto source = open_source({*it}, config, cluster_common, cluster_dataset);
        const ResolvedQuestion resolved = resolve_question(
            *it, config, source.cache.get(), source.client.get(), false);
        const SimilarityMatrix sm = pairwise_similarity(resolved.clustering_rows);
        const Algorithm algo = algorithm_from_string(cluster_algo);
        const Clustering clustering = algo == Algorithm::hac_average
                                          ? hac_average_linkage(sm, config.distance_threshold)
                                          : greedy_cluster(sm, config.distance_threshold);
        std::cout << "id=" << it->id << " algorithm=" << to_string(clustering.algorithm)
                  << " threshold=" << clustering.threshold << " k=" << clustering.k
                  << '\n';
        const auto sizes = clustering.cluster_sizes();
        for (int c = 0; c < clustering.k; ++c) {
            std::cout << "cluster " << c << " (" << sizes[static_cast<std::size_t>(c)]
                      << " members):\n";
            for (std::size_t i = 0; i < clustering.assignments.size(); ++i) {
                if (clustering.assignments[i] == c) {
                    std::cout << "  [" << i << "] " << it->answers[i] << '\n';
                }
            }
        }
        std::cout << "merge trace (left,right,distance):\n"
                  << format_merge_trace(clustering);
    });

    // score
    auto* score_cmd =
        app.add_subcommand("score", "per-question inconsistency scores");
    CommonOptions score_common;
    std::string score_dataset;
    std::vector<std::string> score_measures;
    std::string score_algo = "hac";
    double score_threshold = -1.0;
    score_cmd->add_option("dataset", score_dataset, "JSONL dataset")->required();
    score_cmd->add_option("--measures", score_measures, "subset of measures to print")
        ->delimiter(',');
    score_cmd->add_option("--algo", score_algo, "hac or greedy");
    score_cmd->add_option("--threshold", score_threshold, "cosine distance cutoff");
    add_common(score_cmd, score_common, true);
    score_cmd->callback([&] {
        Config config = make_config(score_common);
        if (!score_measures.empty()) config.measures = score_measures;
        if (score_threshold >= 0.0) config.distance_threshold = score_threshold;
        validate(config);
        const auto records = load_dataset(score_dataset);
        const auto source = open_source(records, config, score_common, score_dataset);
        const auto corpus =
            build_corpus(records, config, source.cache.get(), source.client.get());
        const Algorithm algo = algorithm_from_string(score_algo);
        for (const auto& q : corpus) {
            const EvalRecord record =
                score_question(q, config.distance_threshold, algo);
            std::cout << format_score_row(record, config.measures) << '\n';
        }
    });

    // label
    auto* label_cmd = app.add_subcommand(
        "label", "score questions and attach automated hallucination labels");
    CommonOptions label_common;
    std::string label_dataset, label_out, label_policy;
    double label_threshold = -1.0;
    label_cmd->add_option("dataset", label_dataset, "JSONL dataset")->required();
    label_cmd->add_option("--label-threshold", label_threshold,
                          "similarity above which a response counts as accurate");
    label_cmd->add_option("--policy", label_policy, "majority or low_temp_reference");
    label_cmd->add_option("--out", label_out, "write records JSONL here (default stdout)");
    add_common(label_cmd, label_common, true);
    label_cmd->callback([&] {
        Config config = make_config(label_common);
        if (label_threshold >= 0.0) config.label_threshold = label_threshold;
        if (!label_policy.empty()) config.label_policy = label_policy;
        validate(config);
        const auto records = load_dataset(label_dataset);
        const auto source = open_source(records, config, label_common, label_dataset);
        const auto corpus = build_labeled_corpus(records, config, source.cache.get(),
                                                 source.client.get());
        std::vector<EvalRecord> out;
        out.reserve(corpus.size());
        for (const auto& q : corpus) {
            EvalRecord record = score_question(q, config.distance_threshold);
            record.label = q.label;
            out.push_back(std::move(record));
        }
        if (label_out.empty()) {
            for (const auto& r : out) std::cout << eval_record_to_json_line(r) << '\n';
        } else {
            write_eval_records(label_out, out);
            std::cout << "wrote " << out.size() << " records to " << label_out << '\n';
        }
    });

    // eval
    auto* eval_cmd = app.add_subcommand("eval", "AUROC per measure from labeled records");
    std::string eval_records_path;
    bool eval_csv = false;
    eval_cmd->add_option("records", eval_records_path, "records JSONL from `label`")
        ->required();
    eval_cmd->add_flag("--csv", eval_csv, "machine-readable output");
    eval_cmd->callback([&] {
        const auto records = load_eval_records(eval_records_path);
        const auto table = evaluate(records);
        std::cout << (eval_csv ? format_eval_csv(table) : format_eval_table(table));
    });

    // ablate
    auto* ablate_cmd =
        app.add_subcommand("ablate", "sweep a parameter and report sindex AUROC");
    CommonOptions ablate_common;
    std::string ablate_dataset, ablate_sweep, ablate_algo = "hac";
    std::vector<double> ablate_cutoffs;
    std::vector<std::size_t> ablate_p_values;
    ablate_cmd->add_option("dataset", ablate_dataset, "JSONL dataset")->required();
    ablate_cmd->add_option("--sweep", ablate_sweep, "threshold or generations")
        ->required();
    ablate_cmd->add_option("--cutoffs", ablate_cutoffs,
                           "similarity cutoffs for --sweep threshold")
        ->delimiter(',');
    ablate_cmd->add_option("--p-values", ablate_p_values,
                           "generation counts for --sweep generations")
        ->delimiter(',');
    ablate_cmd->add_option("--algo", ablate_algo, "hac or greedy");
    add_common(ablate_cmd, ablate_common, true);
    ablate_cmd->callback([&] {
        const Config config = make_config(ablate_common);
        const auto records = load_dataset(ablate_dataset);
        const auto source = open_source(records, config, ablate_common, ablate_dataset);
        const auto corpus = build_labeled_corpus(records, config, source.cache.get(),
                                                 source.client.get());
        const Algorithm algo = algorithm_from_string(ablate_algo);
        if (ablate_sweep == "threshold") {
            const auto& cutoffs =
                ablate_cutoffs.empty() ? kDefaultCutoffSweep : ablate_cutoffs;
            std::cout << format_sweep_csv("similarity_cutoff",
                                          ablate_threshold(corpus, cutoffs, algo));
        } else if (ablate_sweep == "generations") {
            std::vector<std::size_t> p_values = ablate_p_values;
            if (p_values.empty()) {
                std::size_t available = corpus.front().responses.generations();
                for (const auto& q : corpus) {
                    available = std::min(available, q.responses.generations());
                }
                for (const std::size_t p : kDefaultGenerationSweep) {
                    if (p <= available) p_values.push_back(p);
                }
            }
            std::cout << format_sweep_csv(
                "generations", ablate_generations(corpus, p_values,
                                                  config.distance_threshold, algo));
        } else {
            throw std::runtime_error("unknown sweep '" + ablate_sweep +
                                     "' (expected threshold or generations)");
        }
    });

    // bench
    auto* bench_cmd = app.add_subcommand(
        "bench", "time clustering against a mock pairwise-NLI baseline");
    BenchOptions bench_options;
    std::size_t bench_max_p = 200;
    bench_cmd->add_option("--max-p", bench_max_p, "largest generation count");
    bench_cmd->add_option("--dim", bench_options.dim, "embedding dimension");
    bench_cmd->add_option("--repetitions", bench_options.repetitions,
                          "timing repetitions (median reported)");
    bench_cmd->add_option("--mock-nli-latency-ms", bench_options.mock_nli_latency_ms,
                          "modeled per-call latency of the NLI mock");
    bench_cmd->add_option("--seed", bench_options.seed, "vector generator seed");
    bench_cmd->callback([&] {
        if (bench_max_p < 2) throw std::runtime_error("--max-p must be at least 2");
        bench_options.p_values.clear();
        for (std::size_t p = 25; p < bench_max_p; p *= 2) {
            bench_options.p_values.push_back(p);
        }
        if (bench_options.p_values.empty() ||
            bench_options.p_values.back() != bench_max_p) {
            bench_options.p_values.push_back(bench_max_p);
        }
        std::cout << format_bench(bench_clustering(bench_options));
    });

    // synth
    auto* synth_cmd = app.add_subcommand(
        "synth", "generate the deterministic synthetic corpus");
    SynthOptions synth_options;
    std::string synth_out = "synth_corpus.jsonl";
    synth_cmd->add_option("--questions", synth_options.questions, "question count");
    synth_cmd->add_option("--seed", synth_options.seed, "generator seed");
    synth_cmd->add_option("--generations", synth_options.generations,
                          "answers per question");
    synth_cmd->add_option("--dim", synth_options.dim, "embedding dimension");
    synth_cmd->add_option("--out", synth_out, "output JSONL path");
    synth_cmd->callback([&] {
        const auto records = synth_corpus(synth_options);
        write_dataset(synth_out, records);
        std::cout << "wrote " << records.size() << " questions to " << synth_out << '\n';
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
