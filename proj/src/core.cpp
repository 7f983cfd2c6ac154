#include "sindex/core.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstring>
#include <stdexcept>

namespace sindex {

namespace {

bool is_blank(const std::string& s) {
    return std::all_of(s.begin(), s.end(),
                       [](unsigned char c) { return std::isspace(c) != 0; });
}

double dot(std::span<const double> a, std::span<const double> b) {
    double acc = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) acc += a[i] * b[i];
    return acc;
}

double norm(std::span<const double> v) { return std::sqrt(dot(v, v)); }

double clamp_unit(double v) { return std::clamp(v, -1.0, 1.0); }

bool rows_bitwise_equal(std::span<const double> a, std::span<const double> b) {
    return std::memcmp(a.data(), b.data(), a.size() * sizeof(double)) == 0;
}

}  // namespace

void validate(const ResponseSet& rs) {
    if (rs.answers.empty()) {
        throw std::invalid_argument("response set '" + rs.id + "' has no answers");
    }
    if (is_blank(rs.question)) {
        throw std::invalid_argument("response set '" + rs.id + "' has an empty question");
    }
    for (std::size_t i = 0; i < rs.answers.size(); ++i) {
        if (is_blank(rs.answers[i])) {
            throw std::invalid_argument("response set '" + rs.id + "' answer " +
                                        std::to_string(i) + " is empty");
        }
    }
}

EmbeddingMatrix EmbeddingMatrix::from_rows(const std::vector<std::vector<double>>& rows) {
    if (rows.empty()) throw std::invalid_argument("embedding matrix needs at least one row");
    EmbeddingMatrix em(rows.size(), rows.front().size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].size() != em.dim_) {
            throw std::invalid_argument("embedding row " + std::to_string(i) +
                                        " has dimension " + std::to_string(rows[i].size()) +
                                        ", expected " + std::to_string(em.dim_));
        }
        std::copy(rows[i].begin(), rows[i].end(), em.row(i).begin());
    }
    return em;
}

void EmbeddingMatrix::normalize_rows() {
    for (std::size_t i = 0; i < rows_; ++i) {
        auto r = row(i);
        const double n = norm(r);
        if (n == 0.0) {
            throw std::invalid_argument("embedding row " + std::to_string(i) + " is the zero vector");
        }
        for (double& x : r) x /= n;
    }
    normalized_ = true;
}

EmbeddingMatrix EmbeddingMatrix::head(std::size_t n) const {
    if (n > rows_) throw std::invalid_argument("head() past the end of the embedding matrix");
    EmbeddingMatrix out(n, dim_);
    std::copy(data_.begin(), data_.begin() + static_cast<std::ptrdiff_t>(n * dim_),
              out.data_.begin());
    out.normalized_ = normalized_;
    return out;
}

SimilarityMatrix::SimilarityMatrix(std::size_t n) : n_(n), values_(n * n, 0.0) {
    for (std::size_t i = 0; i < n; ++i) values_[i * n + i] = 1.0;
}

std::vector<RepresentativeString> build_representative_strings(const ResponseSet& rs,
                                                               std::string_view separator) {
    validate(rs);
    std::vector<RepresentativeString> out;
    out.reserve(rs.answers.size());
    for (std::size_t i = 0; i < rs.answers.size(); ++i) {
        std::string value = rs.question;
        value += separator;
        value += rs.answers[i];
        out.push_back({std::move(value), i});
    }
    return out;
}

double cosine_similarity(std::span<const double> a, std::span<const double> b) {
    if (a.size() != b.size()) {
        throw std::invalid_argument("cosine_similarity: dimension mismatch (" +
                                    std::to_string(a.size()) + " vs " + std::to_string(b.size()) + ")");
    }
    if (a.empty()) throw std::invalid_argument("cosine_similarity: empty vectors");
    const double na = norm(a);
    const double nb = norm(b);
    if (na == 0.0 || nb == 0.0) {
        throw std::invalid_argument("cosine_similarity: zero vector");
    }
    if (rows_bitwise_equal(a, b)) return 1.0;
    std::vector<double> ua(a.begin(), a.end());
    std::vector<double> ub(b.begin(), b.end());
    for (double& x : ua) x /= na;
    for (double& x : ub) x /= nb;
    return clamp_unit(dot(ua, ub));
}

SimilarityMatrix pairwise_similarity(const EmbeddingMatrix& em) {
    if (em.rows() == 0) throw std::invalid_argument("pairwise_similarity: empty embedding matrix");
    EmbeddingMatrix unit = em;
    if (!unit.normalized()) unit.normalize_rows();

    const std::size_t p = unit.rows();
    SimilarityMatrix sm(p);
    for (std::size_t i = 0; i < p; ++i) {
        for (std::size_t j = i + 1; j < p; ++j) {
            double s = clamp_unit(dot(unit.row(i), unit.row(j)));
            // Identical rows must compare as exactly 1, not 1 - 1ulp.
            if (s > 1.0 - 1e-9 && rows_bitwise_equal(unit.row(i), unit.row(j))) s = 1.0;
            sm.set(i, j, s);
        }
    }
    return sm;
}

double shannon_entropy(std::span<const double> p) {
    double h = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) {
        const double x = p[i];
        if (x < 0.0) {
            throw std::invalid_argument("shannon_entropy: negative entry at index " +
                                        std::to_string(i));
        }
        if (x > 0.0) h -= x * std::log(x);
    }
    // -0.0 shows up when every term is zero; keep the sign clean.
    return h == 0.0 ? 0.0 : h;
}

}  // namespace sindex
