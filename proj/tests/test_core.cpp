#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "sindex/core.hpp"

using namespace sindex;

namespace {

ResponseSet planets() {
    return {"q1", "Which planet do we live on?", {"Earth", "Saturn", "Earth"}, "Earth"};
}

}  // namespace

TEST_CASE("validate accepts a well-formed response set") {
    CHECK_NOTHROW(validate(planets()));
}

TEST_CASE("validate rejects malformed response sets") {
    ResponseSet rs = planets();
    rs.answers.clear();
    CHECK_THROWS_AS(validate(rs), std::invalid_argument);

    rs = planets();
    rs.question = "";
    CHECK_THROWS_AS(validate(rs), std::invalid_argument);

    rs = planets();
    rs.answers[1] = "   ";
    CHECK_THROWS_AS(validate(rs), std::invalid_argument);
}

TEST_CASE("representative strings join question and answer with the separator") {
    const auto reps = build_representative_strings(planets(), " [SEP] ");
    REQUIRE(reps.size() == 3);
    CHECK(reps[0].value == "Which planet do we live on? [SEP] Earth");
    CHECK(reps[1].value == "Which planet do we live on? [SEP] Saturn");
    CHECK(reps[0].source_index == 0);
    CHECK(reps[2].source_index == 2);
    // Identical answers produce identical strings.
    CHECK(reps[0].value == reps[2].value);
}

TEST_CASE("representative strings honor a custom separator") {
    const auto reps = build_representative_strings(planets(), " | ");
    CHECK(reps[1].value == "Which planet do we live on? | Saturn");
}

TEST_CASE("cosine similarity on hand vectors") {
    const std::vector<double> x{1.0, 0.0};
    const std::vector<double> y{0.0, 2.0};
    const std::vector<double> z{3.0, 0.0};
    CHECK(cosine_similarity(x, y) == doctest::Approx(0.0));
    CHECK(cosine_similarity(x, z) == doctest::Approx(1.0));
    const std::vector<double> diag{1.0, 1.0};
    CHECK(cosine_similarity(x, diag) ==
          doctest::Approx(1.0 / std::numbers::sqrt2).epsilon(1e-12));
}

TEST_CASE("cosine similarity is exactly 1 for bitwise-equal vectors") {
    std::vector<double> v{0.1234567891234, -0.77, 0.5551212};
    CHECK(cosine_similarity(v, v) == 1.0);
}

TEST_CASE("cosine similarity rejects bad input") {
    const std::vector<double> x{1.0, 0.0};
    const std::vector<double> zero{0.0, 0.0};
    const std::vector<double> shorter{1.0};
    CHECK_THROWS_AS((void)cosine_similarity(x, zero), std::invalid_argument);
    CHECK_THROWS_AS((void)cosine_similarity(x, shorter), std::invalid_argument);
}

TEST_CASE("pairwise similarity mirrors and has unit diagonal") {
    EmbeddingMatrix em(3, 2);
    em.row(0)[0] = 1.0;
    em.row(1)[1] = 5.0;
    em.row(2)[0] = 1.0;
    em.row(2)[1] = 1.0;
    const SimilarityMatrix sm = pairwise_similarity(em);
    REQUIRE(sm.size() == 3);
    for (std::size_t i = 0; i < 3; ++i) CHECK(sm.at(i, i) == 1.0);
    CHECK(sm.at(0, 1) == sm.at(1, 0));
    CHECK(sm.at(0, 2) == doctest::Approx(1.0 / std::numbers::sqrt2).epsilon(1e-12));
    CHECK(sm.at(0, 1) == doctest::Approx(0.0));
}

TEST_CASE("pairwise similarity gives exact 1.0 for duplicated rows") {
    std::vector<std::vector<double>> rows{{0.3, 0.4, 0.5}, {0.3, 0.4, 0.5},
                                          {-0.2, 0.9, 0.11}};
    const auto em = EmbeddingMatrix::from_rows(rows);
    const SimilarityMatrix sm = pairwise_similarity(em);
    CHECK(sm.at(0, 1) == 1.0);
    CHECK(sm.at(0, 2) != 1.0);
}

TEST_CASE("pairwise similarity rejects a zero row") {
    EmbeddingMatrix em(2, 2);
    em.row(0)[0] = 1.0;
    CHECK_THROWS_AS((void)pairwise_similarity(em), std::invalid_argument);
}

TEST_CASE("shannon entropy on hand distributions") {
    const std::vector<double> uniform4{0.25, 0.25, 0.25, 0.25};
    CHECK(shannon_entropy(uniform4) == doctest::Approx(std::log(4.0)).epsilon(1e-12));

    const std::vector<double> degenerate{1.0};
    CHECK(shannon_entropy(degenerate) == 0.0);

    const std::vector<double> with_zero{0.5, 0.5, 0.0};
    CHECK(shannon_entropy(with_zero) ==
          doctest::Approx(std::numbers::ln2).epsilon(1e-12));

    // Frozen by summing -p ln p by hand for [1/2, 1/3, 1/6].
    const std::vector<double> fig{0.5, 1.0 / 3.0, 1.0 / 6.0};
    CHECK(shannon_entropy(fig) == doctest::Approx(1.0114042647073516).epsilon(1e-12));
}

TEST_CASE("shannon entropy accepts subnormalized vectors") {
    const std::vector<double> sub{0.4, 0.3};
    CHECK(shannon_entropy(sub) ==
          doctest::Approx(-0.4 * std::log(0.4) - 0.3 * std::log(0.3)).epsilon(1e-12));
}

TEST_CASE("shannon entropy rejects negative entries") {
    const std::vector<double> bad{0.5, -0.1};
    CHECK_THROWS_AS((void)shannon_entropy(bad), std::invalid_argument);
}

TEST_CASE("shannon entropy never returns negative zero") {
    const std::vector<double> p{1.0};
    const double h = shannon_entropy(p);
    CHECK(!std::signbit(h));
}

TEST_CASE("embedding matrix from_rows and head") {
    std::vector<std::vector<double>> rows{{1.0, 2.0}, {3.0, 4.0}, {5.0, 6.0}};
    const auto em = EmbeddingMatrix::from_rows(rows);
    CHECK(em.rows() == 3);
    CHECK(em.dim() == 2);
    CHECK(em.row(1)[0] == 3.0);
    const auto top = em.head(2);
    CHECK(top.rows() == 2);
    CHECK(top.row(1)[1] == 4.0);
    CHECK_THROWS_AS((void)em.head(4), std::invalid_argument);
}

TEST_CASE("from_rows rejects ragged input") {
    std::vector<std::vector<double>> rows{{1.0, 2.0}, {3.0}};
    CHECK_THROWS_AS((void)EmbeddingMatrix::from_rows(rows), std::invalid_argument);
}

TEST_CASE("normalize_rows produces unit rows and is idempotent") {
    std::vector<std::vector<double>> rows{{3.0, 4.0}, {0.0, 2.0}};
    auto em = EmbeddingMatrix::from_rows(rows);
    em.normalize_rows();
    CHECK(em.normalized());
    CHECK(em.row(0)[0] == doctest::Approx(0.6));
    CHECK(em.row(0)[1] == doctest::Approx(0.8));
    const double before = em.row(1)[1];
    em.normalize_rows();
    CHECK(em.row(1)[1] == before);
}
