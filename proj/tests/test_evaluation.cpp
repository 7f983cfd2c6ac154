#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <map>
#include <string>
#include <vector>

#include "sindex/evaluation.hpp"
#include "sindex/rng.hpp"

using namespace sindex;

namespace {

// Probability interpretation of AUROC, computed pair by pair.
double auroc_brute_force(const std::vector<double>& scores,
                         const std::vector<int>& labels) {
    double wins = 0.0;
    std::size_t pairs = 0;
    for (std::size_t i = 0; i < scores.size(); ++i) {
        for (std::size_t j = 0; j < scores.size(); ++j) {
            if (labels[i] == kHallucinated && labels[j] == kAccurate) {
                ++pairs;
                if (scores[i] > scores[j]) wins += 1.0;
                else if (scores[i] == scores[j]) wins += 0.5;
            }
        }
    }
    return wins / static_cast<double>(pairs);
}

LabeledQuestion question_with_groups(const std::string& id,
                                     const std::vector<std::size_t>& group_sizes,
                                     int label) {
    LabeledQuestion q;
    q.question_id = id;
    q.responses.id = id;
    q.responses.question = "q?";
    std::size_t total = 0;
    for (std::size_t s : group_sizes) total += s;
    q.embeddings = EmbeddingMatrix(total, group_sizes.size());
    std::size_t row = 0;
    for (std::size_t g = 0; g < group_sizes.size(); ++g) {
        for (std::size_t i = 0; i < group_sizes[g]; ++i, ++row) {
            q.responses.answers.push_back("answer " + std::to_string(g));
            q.embeddings.row(row)[g] = 1.0;
        }
    }
    q.label = label;
    return q;
}

}  // namespace

TEST_CASE("auroc on a small worked example") {
    const std::vector<double> scores{0.9, 0.95, 0.2, 0.4};
    const std::vector<int> labels{1, 0, 0, 1};
    // Positive scores {0.9, 0.4} vs negative {0.95, 0.2}: wins 2 of 4.
    CHECK(auroc(scores, labels) == doctest::Approx(0.5).epsilon(1e-15));
}

TEST_CASE("auroc extremes") {
    const std::vector<int> labels{1, 1, 0, 0};
    CHECK(auroc(std::vector<double>{0.9, 0.8, 0.2, 0.1}, labels) == 1.0);
    CHECK(auroc(std::vector<double>{0.1, 0.2, 0.8, 0.9}, labels) == 0.0);
    CHECK(auroc(std::vector<double>{0.5, 0.5, 0.5, 0.5}, labels) == 0.5);
}

TEST_CASE("auroc midranks match the pairwise definition") {
    Rng rng(11);
    for (int trial = 0; trial < 500; ++trial) {
        const std::size_t n = 2 + rng.index(11);
        std::vector<double> scores;
        std::vector<int> labels;
        bool has_pos = false, has_neg = false;
        for (std::size_t i = 0; i < n; ++i) {
            // Coarse grid forces frequent ties.
            scores.push_back(static_cast<double>(rng.index(5)) / 4.0);
            const int label = rng.uniform() < 0.5 ? kHallucinated : kAccurate;
            labels.push_back(label);
            (label == kHallucinated ? has_pos : has_neg) = true;
        }
        if (!has_pos) labels[0] = kHallucinated;
        if (!has_neg) labels[n - 1] = kAccurate;
        if (labels[0] == labels[n - 1]) continue;
        CAPTURE(trial);
        CHECK(auroc(scores, labels) ==
              doctest::Approx(auroc_brute_force(scores, labels)).epsilon(1e-12));
    }
}

TEST_CASE("auroc flips under score negation") {
    Rng rng(13);
    for (int trial = 0; trial < 50; ++trial) {
        std::vector<double> scores;
        std::vector<int> labels{1, 0};
        scores.push_back(rng.uniform());
        scores.push_back(rng.uniform());
        for (int i = 0; i < 8; ++i) {
            scores.push_back(rng.uniform());
            labels.push_back(rng.uniform() < 0.5 ? 1 : 0);
        }
        std::vector<double> negated;
        for (double s : scores) negated.push_back(-s);
        CHECK(auroc(scores, labels) ==
              doctest::Approx(1.0 - auroc(negated, labels)).epsilon(1e-12));
    }
}

TEST_CASE("auroc is invariant under monotone transforms") {
    const std::vector<double> scores{0.1, 1.7, 0.4, 2.2, 0.9, 0.9};
    const std::vector<int> labels{0, 1, 0, 1, 1, 0};
    std::vector<double> exp_scores;
    for (double s : scores) exp_scores.push_back(std::exp(3.0 * s));
    CHECK(auroc(scores, labels) ==
          doctest::Approx(auroc(exp_scores, labels)).epsilon(1e-12));
}

TEST_CASE("auroc input validation") {
    CHECK_THROWS_AS((void)auroc(std::vector<double>{1.0, 2.0},
                                std::vector<int>{1, 1}),
                    std::invalid_argument);  // one class only
    CHECK_THROWS_AS((void)auroc(std::vector<double>{1.0, 2.0},
                                std::vector<int>{1, 2}),
                    std::invalid_argument);  // labels must be 0/1
    CHECK_THROWS_AS((void)auroc(std::vector<double>{1.0},
                                std::vector<int>{1, 0}),
                    std::invalid_argument);  // size mismatch
    const double nan = std::nan("");
    CHECK_THROWS_AS((void)auroc(std::vector<double>{nan, 1.0},
                                std::vector<int>{1, 0}),
                    std::invalid_argument);  // non-finite score
}

TEST_CASE("score_question produces all three measures") {
    const auto q = question_with_groups("q0", {3, 2, 1}, kHallucinated);
    const EvalRecord rec = score_question(q, 0.05);
    CHECK(rec.question_id == "q0");
    CHECK(rec.label == kHallucinated);
    REQUIRE(rec.scores.count("sindex") == 1);
    REQUIRE(rec.scores.count("cluster_entropy") == 1);
    REQUIRE(rec.scores.count("naive_entropy") == 1);
    CHECK(rec.scores.at("sindex") ==
          doctest::Approx(1.0114042647073516).epsilon(1e-13));
    CHECK(rec.scores.at("cluster_entropy") == rec.scores.at("sindex"));
    CHECK(rec.scores.at("naive_entropy") ==
          doctest::Approx(1.0114042647073516).epsilon(1e-12));
}

TEST_CASE("evaluate separates scattered from concentrated questions") {
    std::vector<EvalRecord> records;
    records.push_back(score_question(question_with_groups("h0", {2, 2, 2}, 1), 0.05));
    records.push_back(score_question(question_with_groups("h1", {2, 2, 1, 1}, 1), 0.05));
    records.push_back(score_question(question_with_groups("a0", {6}, 0), 0.05));
    records.push_back(score_question(question_with_groups("a1", {5, 1}, 0), 0.05));
    const auto table = evaluate(records);
    CHECK(table.at("sindex") == 1.0);
    CHECK(table.at("cluster_entropy") == 1.0);
    CHECK(table.at("naive_entropy") == 1.0);
}

TEST_CASE("evaluate rejects degenerate inputs") {
    std::vector<EvalRecord> one;
    one.push_back(score_question(question_with_groups("q", {2, 1}, 1), 0.05));
    CHECK_THROWS_AS((void)evaluate(one), std::invalid_argument);

    std::vector<EvalRecord> records;
    records.push_back(score_question(question_with_groups("q0", {2, 1}, 1), 0.05));
    records.push_back(score_question(question_with_groups("q1", {3}, 0), 0.05));
    records[1].scores.erase("naive_entropy");
    CHECK_THROWS_AS((void)evaluate(records), std::invalid_argument);
}

TEST_CASE("threshold sweep rescored per cutoff") {
    std::vector<LabeledQuestion> corpus;
    corpus.push_back(question_with_groups("h0", {2, 2, 2}, 1));
    corpus.push_back(question_with_groups("h1", {3, 2, 1}, 1));
    corpus.push_back(question_with_groups("a0", {6}, 0));
    corpus.push_back(question_with_groups("a1", {5, 1}, 0));
    const auto rows = ablate_threshold(corpus, {0.70, 0.95});
    REQUIRE(rows.size() == 2);
    CHECK(rows[0].first == 0.70);
    CHECK(rows[1].first == 0.95);
    // Orthogonal one-hot groups never merge at any cutoff < 1.
    CHECK(rows[0].second == 1.0);
    CHECK(rows[1].second == 1.0);

    CHECK_THROWS_AS((void)ablate_threshold(corpus, {0.0}), std::invalid_argument);
    CHECK_THROWS_AS((void)ablate_threshold(corpus, {1.0}), std::invalid_argument);
}

TEST_CASE("generation sweep truncates answer lists") {
    std::vector<LabeledQuestion> corpus;
    corpus.push_back(question_with_groups("h0", {2, 2, 2}, 1));
    corpus.push_back(question_with_groups("h1", {3, 2, 1}, 1));
    corpus.push_back(question_with_groups("a0", {6}, 0));
    corpus.push_back(question_with_groups("a1", {5, 1}, 0));
    const auto rows = ablate_generations(corpus, {2, 4, 6});
    REQUIRE(rows.size() == 3);
    CHECK(rows[0].first == 2);
    CHECK(rows[2].first == 6);
    // With all six answers the one-hot corpus is perfectly separable.
    CHECK(rows[2].second == 1.0);
    for (const auto& [p, a] : rows) {
        CHECK(a >= 0.0);
        CHECK(a <= 1.0);
    }
}

TEST_CASE("generation sweep names the offending question") {
    std::vector<LabeledQuestion> corpus;
    corpus.push_back(question_with_groups("short_one", {2, 1}, 1));
    corpus.push_back(question_with_groups("a0", {6}, 0));
    try {
        (void)ablate_generations(corpus, {4});
        FAIL("expected an exception");
    } catch (const std::invalid_argument& e) {
        CHECK(std::string(e.what()).find("short_one") != std::string::npos);
    }
}

TEST_CASE("bench produces samples for every algorithm and size") {
    BenchOptions opt;
    opt.p_values = {8, 16};
    opt.dim = 16;
    opt.repetitions = 3;
    opt.mock_nli_latency_ms = 1.0;
    const auto samples = bench_clustering(opt);
    REQUIRE(samples.size() == 6);  // 2 sizes x {hac, greedy, mock_nli}
    for (const auto& s : samples) {
        CHECK(s.repetitions == 3);
        CHECK(s.wall_time >= 0.0);
        CHECK((s.p == 8 || s.p == 16));
    }
    // The mock NLI path must count exactly one call per unordered pair.
    int nli_rows = 0;
    for (const auto& s : samples) {
        if (s.algorithm == "mock_nli") {
            ++nli_rows;
            CHECK(s.nli_calls == s.p * (s.p - 1) / 2);
            // Modeled time dominates: calls * latency is a hard lower bound.
            CHECK(s.wall_time >=
                  static_cast<double>(s.nli_calls) * 0.001 - 1e-12);
        }
    }
    CHECK(nli_rows == 2);

    BenchOptions bad;
    bad.repetitions = 2;
    CHECK_THROWS_AS((void)bench_clustering(bad), std::invalid_argument);
}

TEST_CASE("bench exponent fit recovers a planted slope") {
    std::vector<BenchSample> samples;
    for (std::size_t p : {25, 50, 100, 200}) {
        BenchSample s;
        s.p = p;
        s.algorithm = "fake";
        s.wall_time = 3e-7 * static_cast<double>(p) * static_cast<double>(p);
        s.repetitions = 3;
        samples.push_back(s);
    }
    CHECK(bench_fit_exponent(samples, "fake") == doctest::Approx(2.0).epsilon(1e-9));
    CHECK_THROWS_AS((void)bench_fit_exponent(samples, "missing"),
                    std::invalid_argument);
}

TEST_CASE("formatting round-trips the essentials") {
    std::map<std::string, double> table{{"sindex", 0.9875}, {"naive_entropy", 0.5}};
    const std::string pretty = format_eval_table(table);
    CHECK(pretty.find("sindex") != std::string::npos);
    CHECK(pretty.find("0.9875") != std::string::npos);
    const std::string csv = format_eval_csv(table);
    CHECK(csv.find("measure,auroc") == 0);
    CHECK(csv.find("naive_entropy,0.5") != std::string::npos);

    std::vector<std::pair<double, double>> sweep{{0.7, 0.85}, {0.95, 1.0}};
    const std::string sweep_csv = format_sweep_csv("cutoff", sweep);
    CHECK(sweep_csv.find("cutoff,auroc") == 0);
    CHECK(sweep_csv.find("0.7,") != std::string::npos);

    std::vector<BenchSample> samples;
    BenchSample s;
    s.p = 200;
    s.algorithm = "hac_average";
    s.wall_time = 0.004821;
    s.repetitions = 5;
    samples.push_back(s);
    const std::string bench = format_bench(samples);
    CHECK(bench.find("P,algorithm,median_seconds,repetitions") == 0);
    CHECK(bench.find("200,hac_average,0.004821,5") != std::string::npos);
}
