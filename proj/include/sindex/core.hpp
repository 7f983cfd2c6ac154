#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace sindex {

/// Default separator inserted between a question and an answer when
/// building representative strings. Configurable at every call site.
inline constexpr std::string_view kDefaultSeparator = " [SEP] ";

/// One question with the P sampled answers produced for it.
/// Answer order is preserved end-to-end: cluster assignments and
/// per-response labels index into `answers`.
struct ResponseSet {
    std::string id;
    std::string question;
    std::vector<std::string> answers;
    std::optional<std::string> canonical_answer;

    std::size_t generations() const { return answers.size(); }
};

/// Throws std::invalid_argument if the set is malformed (no answers,
/// empty question, or an answer that is empty after trimming).
void validate(const ResponseSet& rs);

/// Question and answer joined by a separator; the unit that gets embedded.
struct RepresentativeString {
    std::string value;
    std::size_t source_index;  // index into ResponseSet::answers
};

/// Row-major matrix of P embedding rows, one per answer.
class EmbeddingMatrix {
public:
    EmbeddingMatrix() = default;
    EmbeddingMatrix(std::size_t rows, std::size_t dim)
        : rows_(rows), dim_(dim), data_(rows * dim, 0.0) {}

    static EmbeddingMatrix from_rows(const std::vector<std::vector<double>>& rows);

    std::size_t rows() const { return rows_; }
    std::size_t dim() const { return dim_; }
    bool normalized() const { return normalized_; }

    std::span<const double> row(std::size_t i) const {
        return {data_.data() + i * dim_, dim_};
    }
    std::span<double> row(std::size_t i) {
        return {data_.data() + i * dim_, dim_};
    }

    /// Scales every row to unit Euclidean norm. Throws on a zero row.
    void normalize_rows();

    /// Copy of the first `n` rows, preserving the normalized flag.
    EmbeddingMatrix head(std::size_t n) const;

private:
    std::size_t rows_ = 0;
    std::size_t dim_ = 0;
    std::vector<double> data_;
    bool normalized_ = false;
};

/// Symmetric P x P cosine-similarity matrix with unit diagonal.
/// Entries are computed once and mirrored, so values(i,j) == values(j,i)
/// holds exactly.
class SimilarityMatrix {
public:
    SimilarityMatrix() = default;
    explicit SimilarityMatrix(std::size_t n);

    std::size_t size() const { return n_; }

    double at(std::size_t i, std::size_t j) const { return values_[i * n_ + j]; }

    /// Sets both (i,j) and (j,i).
    void set(std::size_t i, std::size_t j, double v) {
        values_[i * n_ + j] = v;
        values_[j * n_ + i] = v;
    }

private:
    std::size_t n_ = 0;
    std::vector<double> values_;
};

/// q + separator + g_i for every answer, in answer order.
std::vector<RepresentativeString> build_representative_strings(
    const ResponseSet& rs, std::string_view separator = kDefaultSeparator);

/// <a,b> / (|a||b|), computed on normalized copies so the result cannot
/// drift above 1. Bitwise-equal inputs return exactly 1. Throws on a zero
/// vector or a dimension mismatch.
double cosine_similarity(std::span<const double> a, std::span<const double> b);

/// All P(P-1)/2 unordered cosine similarities, mirrored, diagonal 1.
/// Rows are normalized once up front; entries are clamped to [-1, 1] and
/// bitwise-identical input rows yield exactly 1.
SimilarityMatrix pairwise_similarity(const EmbeddingMatrix& em);

/// -sum p_i ln p_i with 0 ln 0 := 0. Natural log. Accepts subnormalized
/// vectors (sum <= 1); throws on a negative entry.
double shannon_entropy(std::span<const double> p);

}  // namespace sindex
